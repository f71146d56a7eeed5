#include "gforge/gbasis.hpp"

#include <algorithm>
#include <queue>

namespace gforge {

namespace {

// leftmost occurrence of pattern as a subword, or npos
size_t find_subword(const Word& w, const Word& pat) {
    if (pat.size() > w.size()) return Word::npos;
    return w.find(pat);
}

struct Reduction {
    const std::vector<NcPoly>* basis;
    const GeneratorAlphabet* alphabet;

    NcPoly reduce(NcPoly p) const {
        NcPoly out(p.degree());
        while (!p.is_zero()) {
            Word w = p.leading_word();
            Scalar c = p.leading_coeff();
            bool hit = false;
            for (const NcPoly& g : *basis) {
                size_t at = find_subword(w, g.leading_word());
                if (at == Word::npos) continue;
                Word u = w.substr(0, at);
                Word v = w.substr(at + g.leading_word().size());
                p -= sandwich(c, u, g, v, alphabet->word_degree(u), alphabet->word_degree(v));
                hit = true;
                break;
            }
            if (!hit) {
                out.add_term(w, c);
                p.add_term(w, -c);  // drop the irreducible leading term
            }
        }
        return out;
    }
};

struct Pending {
    int degree;
    uint64_t seq;  // insertion order, for deterministic processing
    NcPoly poly;
    bool operator>(const Pending& o) const {
        return degree != o.degree ? degree > o.degree : seq > o.seq;
    }
};

}  // namespace

TruncatedGB truncated_groebner(const GeneratorAlphabet& alphabet,
                               std::vector<NcPoly> relations, int bound) {
    TruncatedGB gb;
    gb.alphabet = alphabet;
    gb.relations = relations;
    gb.bound = bound;

    for (const NcPoly& r : relations)
        if (!r.is_zero() && r.degree() < 2)
            throw Error("relation of degree " + std::to_string(r.degree()) +
                        " rejected (non-connected or non-minimal presentation)");

    Field field;
    for (const NcPoly& r : relations)
        if (!r.is_zero()) {
            field = r.leading_coeff().field();
            break;
        }

    Reduction red{&gb.basis, &alphabet};
    std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>> queue;
    uint64_t seq = 0;
    for (NcPoly& r : relations) {
        if (r.is_zero() || r.degree() > bound) continue;
        queue.push(Pending{r.degree(), seq++, std::move(r)});
    }

    auto push_overlaps = [&](size_t gi, size_t gj) {
        // overlaps of lead(gi) with lead(gj): suffix of wi equals prefix of wj
        const Word& wi = gb.basis[gi].leading_word();
        const Word& wj = gb.basis[gj].leading_word();
        const Scalar one = Scalar::one(field);
        for (size_t k = 1; k < wi.size() && k < wj.size(); ++k) {
            if (wi.compare(wi.size() - k, k, wj, 0, k) != 0) continue;
            Word u = wi.substr(0, wi.size() - k);   // wi = u . o
            Word v = wj.substr(k);                  // wj = o . v
            int du = alphabet.word_degree(u);
            int dv = alphabet.word_degree(v);
            int deg = du + alphabet.word_degree(wj);
            if (deg > bound) continue;
            NcPoly s = sandwich(one, Word{}, gb.basis[gi], v, 0, dv) -
                       sandwich(one, u, gb.basis[gj], Word{}, du, 0);
            if (!s.is_zero()) queue.push(Pending{deg, seq++, std::move(s)});
        }
    };

    while (!queue.empty()) {
        Pending item = queue.top();
        queue.pop();
        NcPoly nf = red.reduce(std::move(item.poly));
        if (nf.is_zero()) continue;
        nf = nf.scaled(nf.leading_coeff().inv());
        gb.basis.push_back(std::move(nf));
        size_t idx = gb.basis.size() - 1;
        for (size_t j = 0; j <= idx; ++j) {
            push_overlaps(idx, j);
            if (j != idx) push_overlaps(j, idx);
        }
    }

    // inter-reduce tails so the basis is the reduced one
    for (size_t i = 0; i < gb.basis.size(); ++i) {
        NcPoly g = gb.basis[i];
        Word lead = g.leading_word();
        Scalar lc = g.leading_coeff();
        NcPoly tail(g.degree());
        bool first = true;
        for (const auto& [w, c] : g.terms()) {
            if (first) {
                first = false;
                continue;
            }
            tail.add_term(w, c);
        }
        NcPoly reduced_tail = red.reduce(tail);
        NcPoly out(g.degree());
        out.add_term(lead, lc);
        out += reduced_tail;
        gb.basis[i] = std::move(out);
    }

    std::sort(gb.basis.begin(), gb.basis.end(), [&](const NcPoly& a, const NcPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.leading_word() < b.leading_word();
    });
    return gb;
}

NcPoly normal_form(const NcPoly& p, const TruncatedGB& gb) {
    if (p.degree() > gb.bound)
        throw Error("normal_form: degree " + std::to_string(p.degree()) +
                    " exceeds truncation bound " + std::to_string(gb.bound));
    Reduction red{&gb.basis, &gb.alphabet};
    return red.reduce(p);
}

std::vector<Word> monomial_basis(const TruncatedGB& gb, int d) {
    if (d > gb.bound)
        throw Error("monomial_basis: degree " + std::to_string(d) +
                    " exceeds truncation bound " + std::to_string(gb.bound));
    std::vector<Word> out;
    if (d < 0) return out;
    std::vector<const Word*> leads;
    for (const NcPoly& g : gb.basis) leads.push_back(&g.leading_word());

    // DFS over words, pruning as soon as a leading word appears as a suffix
    Word w;
    auto ends_with_lead = [&]() {
        for (const Word* l : leads) {
            if (l->size() > w.size()) continue;
            if (w.compare(w.size() - l->size(), l->size(), *l) == 0) return true;
        }
        return false;
    };
    auto dfs = [&](auto&& self, int deg) -> void {
        if (deg == d) {
            out.push_back(w);
            return;
        }
        for (Gen g = 0; g < gb.alphabet.size(); ++g) {
            int nd = deg + gb.alphabet.degree(g);
            if (nd > d) continue;
            w.push_back(g);
            if (!ends_with_lead()) self(self, nd);
            w.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

std::vector<long> hilbert_function(const TruncatedGB& gb) {
    std::vector<long> h;
    for (int d = 0; d <= gb.bound; ++d) h.push_back(long(monomial_basis(gb, d).size()));
    return h;
}

}  // namespace gforge
