#include "gforge/pipeline.hpp"

#include <sstream>

#include "gforge/nakayama.hpp"

namespace gforge {

namespace {

using nlohmann::json;

// Carries every artifact a command may need; pieces are built once on demand.
struct Context {
    const ProblemFile& p;
    const RunOptions& opt;
    Field field;
    std::map<std::string, Scalar> params;
    int D, H;
    bool assert_noetherian, assert_koszul;

    std::optional<GradedAlgebra> A, B;
    std::optional<MatrixAlgebraHom> sigma;
    std::optional<SigmaDerivation> delta;
    bool has_delta = false;
    std::optional<TwistedTensorAlgebra> C;     // the presented product (with delta)
    std::optional<TwistedTensorAlgebra> Cbar;  // delta = 0 companion
    std::optional<FreeResolution> Pres, Qres, Cres;
    std::optional<PhiTower> tower;
    std::optional<MatrixAlgebraHom> phi;
    std::optional<GradedAutomorphism> detsig, muA, muB;
    std::optional<ScalarMatrix> hdet_mat;
    std::optional<TensorResolution> tres;

    json hypotheses = json::array();
    json caveats = json::array();

    Context(const ProblemFile& pf, const RunOptions& o) : p(pf), opt(o) {
        field = pf.field;
        if (o.field_override) {
            if (*o.field_override == "rational")
                field = Field{};
            else
                field = Field{std::stoull(*o.field_override)};
        }
        for (const auto& [k, v] : pf.parameters) params[k] = Scalar::from_string(v, field);
        for (const auto& [k, v] : o.params) params[k] = Scalar::from_string(v, field);
        D = o.max_degree.value_or(pf.max_degree);
        H = o.max_homological.value_or(pf.max_homological);
        assert_noetherian = pf.assert_noetherian || o.assert_noetherian;
        assert_koszul = pf.assert_koszul || o.assert_koszul;
    }

    void hypothesis(const std::string& name, const std::string& status,
                    const std::string& detail = "") {
        json h;
        h["name"] = name;
        h["status"] = status;
        if (!detail.empty()) h["detail"] = detail;
        hypotheses.push_back(h);
    }

    GradedAlgebra build_algebra(const std::vector<std::string>& gens,
                                const std::vector<int>& degrees,
                                const std::vector<std::string>& rels) {
        GeneratorAlphabet alpha(gens, degrees);
        std::vector<NcPoly> parsed;
        for (const auto& r : rels) parsed.push_back(parse_expr(r, alpha, field, params));
        return GradedAlgebra(truncated_groebner(alpha, parsed, D), field);
    }

    void need_algebras() {
        if (A) return;
        A.emplace(build_algebra(p.a_gens, p.a_degrees, p.a_relations));
        B.emplace(build_algebra(p.b_gens, p.b_degrees, p.b_relations));
    }

    void need_twist_data() {
        if (sigma) return;
        need_algebras();
        size_t m = p.b_gens.size();
        std::vector<MatrixAlgebraHom::Matrix> images;
        for (size_t g = 0; g < p.a_gens.size(); ++g) {
            MatrixAlgebraHom::Matrix mat;
            for (size_t i = 0; i < m; ++i) {
                PolyVec row;
                for (size_t j = 0; j < m; ++j)
                    row.push_back(parse_expr(p.sigma[g][i][j], A->alphabet(), field, params));
                mat.push_back(std::move(row));
            }
            images.push_back(std::move(mat));
        }
        sigma.emplace(&*A, m, std::move(images));
        auto check = validate_sigma(*sigma);
        if (!check.ok) throw Error(check.message);
        hypothesis("sigma is a graded algebra homomorphism", "verified");

        if (p.delta) {
            std::vector<PolyVec> dimages;
            for (size_t g = 0; g < p.a_gens.size(); ++g) {
                PolyVec vec;
                for (size_t i = 0; i < m; ++i)
                    vec.push_back(parse_expr((*p.delta)[g][i], A->alphabet(), field, params));
                dimages.push_back(std::move(vec));
            }
            delta.emplace(&*sigma, B->alphabet().degrees, std::move(dimages));
            delta->validate();
            has_delta = false;
            for (size_t g = 0; g < p.a_gens.size() && !has_delta; ++g)
                for (size_t i = 0; i < m; ++i) has_delta |= !delta->gen_image(g)[i].is_zero();
            hypothesis("delta is a sigma-derivation", "verified");
        }
    }

    TwistData data() {
        need_twist_data();
        return TwistData{&*A, &*B, *sigma, has_delta ? delta : std::nullopt};
    }
    TwistData data_bar() {
        need_twist_data();
        return TwistData{&*A, &*B, *sigma, std::nullopt};
    }

    void need_products() {
        if (C) return;
        need_twist_data();
        C.emplace(build_twisted_tensor(data(), D));
        if (has_delta)
            Cbar.emplace(build_twisted_tensor(data_bar(), D));
        hypothesis("tau is a twisting map (Hilbert factorization)", "verified",
                   "all degrees <= " + std::to_string(D));
    }
    const TwistedTensorAlgebra& cbar() {
        need_products();
        return has_delta ? *Cbar : *C;
    }

    void need_resolutions() {
        need_products();
        if (!Pres) Pres.emplace(minimal_resolution(*A, H, D));
        if (!Qres) Qres.emplace(minimal_resolution(*B, H, D));
    }

    void need_tower() {
        need_resolutions();
        if (tower) return;
        auto purity = is_pure(*Qres);
        hypothesis("B has a pure resolution", purity.pure ? "verified" : "undetermined",
                   purity.pure ? ""
                               : "mixed term at position " +
                                     std::to_string(purity.first_mixed));
        if (!purity.pure) throw Error("B does not have a pure resolution at this bound");
        tower.emplace(build_phi_tower(data_bar(), cbar(), *Qres));
        for (size_t i = 2; i < tower->unique_solution.size(); ++i)
            if (!tower->unique_solution[i])
                caveats.push_back("phi_" + std::to_string(i) +
                                  " system underdetermined; particular solution used");
    }

    void need_phi() {
        need_twist_data();
        if (phi) return;
        auto inv = invert_sigma(*sigma);
        hypothesis("sigma is invertible", inv ? "verified" : "failed");
        if (!inv) throw Error("sigma is not invertible");
        phi.emplace(std::move(*inv));
    }

    void need_detsig() {
        need_tower();
        if (!detsig) detsig.emplace(det_sigma(*tower));
    }

    void need_hdet() {
        need_resolutions();
        need_phi();
        if (!hdet_mat) hdet_mat.emplace(hdet(*A, *sigma, *phi, *Pres));
    }

    void need_mus() {
        need_resolutions();
        if (muA) return;
        ExtAlgebra extA(&*Pres);
        auto frobA = frobenius_data(extA);
        muA.emplace(nakayama_of_base(*A, frobA));
        ExtAlgebra extB(&*Qres);
        auto frobB = frobenius_data(extB);
        muB.emplace(nakayama_of_base(*B, frobB));
    }

    void need_cres() {
        need_products();
        if (!Cres) Cres.emplace(minimal_resolution(*C->C, H, D));
    }

    void need_tres() {
        need_tower();
        if (!tres) tres.emplace(tensor_resolution(*tower, *Pres));
    }
};

json scalar_matrix_json(const ScalarMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

json images_json(const GradedAutomorphism& f) {
    json out = json::object();
    const auto& names = f.alg->alphabet().names;
    for (size_t i = 0; i < f.images.size(); ++i)
        out[names[i]] = pretty_print(f.images[i], f.alg->alphabet());
    return out;
}

json hilbert_json(const GradedAlgebra& A) {
    json out = json::array();
    for (long d : A.hilbert()) out.push_back(d);
    return out;
}

json betti_json(const FreeResolution& res) {
    json out = json::array();
    for (const auto& t : res.terms) {
        json shifts = json::array();
        for (int s : t.shifts) shifts.push_back(s);
        out.push_back(shifts);
    }
    return out;
}

json purity_json(const FreeResolution& res) {
    auto p = is_pure(res);
    json out;
    out["pure"] = p.pure;
    if (!p.pure) out["first_mixed_position"] = p.first_mixed;
    return out;
}

json asreg_json(const ASRegReport& rep) {
    json out;
    out["determined"] = rep.determined;
    out["as_regular"] = rep.as_regular;
    if (rep.determined && rep.as_regular) {
        out["type"] = json::array({rep.h, rep.l});
    }
    out["caveat"] = rep.caveat;
    return out;
}

json ext_dims_json(const FreeResolution& res) {
    ExtAlgebra ext(&res);
    json out = json::array();
    for (int i = 0; i <= res.length; ++i) {
        json level;
        level["homological"] = i;
        json by_degree = json::object();
        for (const auto& [deg, count] : ext.bigraded_dims(i))
            by_degree[std::to_string(deg)] = count;
        level["dims"] = by_degree;
        out.push_back(level);
    }
    return out;
}

void do_hilbert(Context& cx, json& inv) {
    cx.need_products();
    inv["hilbert"]["A"] = hilbert_json(*cx.A);
    inv["hilbert"]["B"] = hilbert_json(*cx.B);
    inv["hilbert"]["C"] = hilbert_json(*cx.C->C);
}

void do_resolve(Context& cx, json& inv) {
    cx.need_resolutions();
    cx.need_cres();
    inv["betti"]["A"] = betti_json(*cx.Pres);
    inv["betti"]["B"] = betti_json(*cx.Qres);
    inv["betti"]["C"] = betti_json(*cx.Cres);
    inv["pure"]["A"] = purity_json(*cx.Pres);
    inv["pure"]["B"] = purity_json(*cx.Qres);
    inv["pure"]["C"] = purity_json(*cx.Cres);
    inv["as_regular"]["A"] = asreg_json(as_regular_report(*cx.A, *cx.Pres));
    inv["as_regular"]["B"] = asreg_json(as_regular_report(*cx.B, *cx.Qres));
    inv["as_regular"]["C"] = asreg_json(as_regular_report(*cx.C->C, *cx.Cres));
}

void do_ext(Context& cx, json& inv) {
    cx.need_resolutions();
    cx.need_cres();
    inv["ext_dims"]["A"] = ext_dims_json(*cx.Pres);
    inv["ext_dims"]["B"] = ext_dims_json(*cx.Qres);
    inv["ext_dims"]["C"] = ext_dims_json(*cx.Cres);
    // spot check: the full E^1 x E^1 product table of A
    ExtAlgebra extA(&*cx.Pres);
    json spots = json::array();
    if (cx.Pres->length >= 1)
        for (size_t a = 0; a < extA.dim(1); ++a)
            for (size_t b = 0; b < extA.dim(1); ++b) {
                ScalarVec prod = extA.product(1, a, 1, b);
                json entry;
                entry["left"] = a;
                entry["right"] = b;
                json coeffs = json::array();
                for (const auto& c : prod) coeffs.push_back(c.str());
                entry["product"] = coeffs;
                spots.push_back(entry);
            }
    inv["yoneda_spot_checks"]["A_E1_times_E1"] = spots;
}

void do_hdet(Context& cx, json& inv) {
    cx.need_hdet();
    auto repA = as_regular_report(*cx.A, *cx.Pres);
    cx.hypothesis("A AS-regular within bounds",
                  repA.determined ? (repA.as_regular ? "verified" : "failed")
                                  : "undetermined",
                  repA.caveat);
    if (!repA.as_regular) throw Error("A not AS-regular at this bound");
    inv["hdet"] = scalar_matrix_json(*cx.hdet_mat);
    auto invm = invert(*cx.hdet_mat);
    inv["hdet_invertible"] = invm.has_value();
    if (!invm) throw Error("hdet is not invertible");
}

void do_det(Context& cx, json& inv) {
    cx.need_detsig();
    auto repB = as_regular_report(*cx.B, *cx.Qres);
    cx.hypothesis("B AS-regular within bounds",
                  repB.determined ? (repB.as_regular ? "verified" : "failed")
                                  : "undetermined",
                  repB.caveat);
    inv["det_sigma"] = images_json(*cx.detsig);
}

void do_nakayama(Context& cx, json& inv) {
    cx.need_detsig();
    cx.need_hdet();
    cx.need_mus();
    for (int d : cx.A->alphabet().degrees)
        if (d != 1) throw Error("theorem route requires A generated in degree 1");
    cx.hypothesis("A, B generated in degree 1", "verified");
    if (cx.assert_noetherian)
        cx.hypothesis("A, B and the associated product are noetherian", "asserted");
    else if (cx.assert_koszul)
        cx.hypothesis("A and B are Koszul", "asserted");
    else
        cx.hypothesis("noetherian (or Koszul) hypothesis", "not asserted",
                      "pass --assert-noetherian or --assert-koszul");

    auto result = nakayama_of_twisted(cx.data(), *cx.C, *cx.muA, *cx.muB, *cx.detsig,
                                      *cx.hdet_mat);
    inv["mu_A"] = images_json(*cx.muA);
    inv["mu_B"] = images_json(*cx.muB);
    inv["mu_C"] = images_json(result.mu);
    inv["mu_C_restriction_A"] = images_json(result.restriction_A);
    inv["y_block"] = scalar_matrix_json(result.y_block);
    json tails = json::object();
    for (size_t j = 0; j < result.tails.size(); ++j)
        tails[cx.B->alphabet().names[j]] =
            pretty_print(result.tails[j], cx.A->alphabet());
    inv["tails"] = tails;
    inv["tail_solution_dim"] = result.tail_solution_dim;
    if (result.tail_solution_dim > 0)
        cx.caveats.push_back("tail system underdetermined (solution space dimension " +
                             std::to_string(result.tail_solution_dim) +
                             "); oracle comparison recommended");
    inv["provenance"] = result.provenance;

    if (cx.opt.oracle) {
        cx.need_cres();
        auto mu_o = nakayama_oracle(*cx.C->C, cx.H, cx.D);
        inv["oracle"]["mu_C"] = images_json(mu_o);
        bool agree = mu_o.images == result.mu.images;
        inv["oracle"]["agreement"] = agree;
        if (!agree) throw Error("oracle route disagrees with the theorem route");
    }
}

void do_check_twist(Context& cx, json& inv) {
    cx.need_products();
    inv["twist_certificate"]["certified"] = true;
    inv["twist_certificate"]["degrees_checked"] = cx.D;
    json conv = json::array();
    for (int d = 0; d <= cx.D; ++d) {
        long e = 0;
        for (int k = 0; k <= d; ++k) e += cx.A->dim(k) * cx.B->dim(d - k);
        conv.push_back(e);
    }
    inv["twist_certificate"]["convolution_dims"] = conv;
    inv["hilbert"]["C"] = hilbert_json(*cx.C->C);
}

void do_tau_e(Context& cx, json& inv) {
    cx.need_tres();
    cx.need_detsig();
    cx.need_hdet();
    cx.need_cres();
    auto rep = tau_e_restrictions(*cx.tower, *cx.Pres, *cx.tres, *cx.detsig,
                                  *cx.hdet_mat, &*cx.Cres);
    json t;
    t["projections_are_tensor_basis"] = rep.projections_are_tensor_basis;
    t["dims_factorize"] = rep.dims_factorize;
    t["sign_law"] = rep.sign_law;
    t["boundary_det_sigma"] = rep.boundary_detsigma;
    t["boundary_hdet"] = rep.boundary_hdet;
    if (!rep.ok()) t["first_violation"] = rep.first_violation;
    inv["tau_E"] = t;
    if (!rep.ok()) throw Error("tau_E verification failed: " + rep.first_violation);
}

}  // namespace

RunResult run(const std::string& command, const ProblemFile& problem,
              const RunOptions& opt) {
    json report;
    report["command"] = command;
    report["input"] = opt.label;
    Context cx(problem, opt);
    report["options"]["field"] = cx.field.str();
    report["options"]["max_degree"] = cx.D;
    report["options"]["max_homological"] = cx.H;
    json prms = json::object();
    for (const auto& [k, v] : cx.params) prms[k] = v.str();
    report["options"]["parameters"] = prms;
    json asserts = json::array();
    if (cx.assert_noetherian) asserts.push_back("noetherian");
    if (cx.assert_koszul) asserts.push_back("koszul");
    report["options"]["assertions"] = asserts;
    report["options"]["oracle"] = opt.oracle;
    report["order"] = "deglex";

    json& inv = report["invariants"];
    inv = json::object();
    int exit_code = 0;
    try {
        if (command == "hilbert") {
            do_hilbert(cx, inv);
        } else if (command == "check-twist") {
            do_check_twist(cx, inv);
        } else if (command == "resolve") {
            do_resolve(cx, inv);
        } else if (command == "ext") {
            do_ext(cx, inv);
        } else if (command == "hdet") {
            do_hdet(cx, inv);
        } else if (command == "det") {
            do_det(cx, inv);
        } else if (command == "nakayama") {
            do_nakayama(cx, inv);
        } else if (command == "all") {
            do_hilbert(cx, inv);
            do_check_twist(cx, inv);
            do_resolve(cx, inv);
            do_ext(cx, inv);
            do_hdet(cx, inv);
            do_det(cx, inv);
            do_nakayama(cx, inv);
            do_tau_e(cx, inv);
        } else {
            throw ParseError(0, "unknown command '" + command + "'");
        }
        report["status"] = "ok";
        // a nakayama run without the noetherian/koszul assertion is only
        // hypothesis-complete when the user vouches for it
        if ((command == "nakayama" || command == "all") && !cx.assert_noetherian &&
            !cx.assert_koszul) {
            report["status"] = "hypotheses-incomplete";
            exit_code = 3;
        }
    } catch (const ParseError& e) {
        report["status"] = "parse-error";
        report["error"] = e.what();
        exit_code = 4;
    } catch (const NotTwistingError& e) {
        report["status"] = "verification-failure";
        report["error"] = e.what();
        report["invariants"]["twist_certificate"]["certified"] = false;
        report["invariants"]["twist_certificate"]["failing_degree"] = e.degree;
        report["invariants"]["twist_certificate"]["defect"] = e.defect;
        exit_code = 2;
    } catch (const Error& e) {
        std::string what = e.what();
        bool undetermined = what.find("undetermined") != std::string::npos ||
                            what.find("does not terminate") != std::string::npos ||
                            what.find("bound") != std::string::npos;
        report["status"] = undetermined ? "undetermined-at-bound" : "verification-failure";
        report["error"] = what;
        exit_code = undetermined ? 3 : 2;
    }
    report["hypotheses"] = cx.hypotheses;
    report["caveats"] = cx.caveats;
    return RunResult{std::move(report), exit_code};
}

namespace {

void render_node(const json& node, const std::string& key, int indent,
                 std::ostringstream& out) {
    std::string pad(size_t(indent) * 2, ' ');
    if (node.is_object()) {
        out << pad << key << ":\n";
        for (const auto& [k, v] : node.items()) render_node(v, k, indent + 1, out);
    } else if (node.is_array()) {
        bool scalars = true;
        for (const auto& v : node)
            if (v.is_object() || v.is_array()) scalars = false;
        if (scalars) {
            out << pad << key << ": [";
            bool first = true;
            for (const auto& v : node) {
                if (!first) out << ", ";
                first = false;
                out << (v.is_string() ? v.get<std::string>() : v.dump());
            }
            out << "]\n";
        } else {
            out << pad << key << ":\n";
            size_t i = 0;
            for (const auto& v : node) render_node(v, "- " + std::to_string(i++), indent + 1, out);
        }
    } else {
        out << pad << key << ": "
            << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
    }
}

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream out;
    for (const auto& [k, v] : report.items()) render_node(v, k, 0, out);
    return out.str();
}

}  // namespace gforge
