#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsc/braid.hpp"
#include "bsc/fourmanifold.hpp"

using json = nlohmann::json;
using namespace bsc;

namespace {

json matrix_json(const IntMat& m) {
    // row-major integer array
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            check(m.at(i, j).fits_slong_p(), "matrix entry too large for the report");
            rows.push_back(m.at(i, j).get_si());
        }
    json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["data"] = rows;
    return out;
}

void emit(const json& j, const std::string& out_path, bool pretty) {
    std::string text = pretty ? j.dump(2) : j.dump();
    text += "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ValueError("cannot open output file '" + out_path + "'");
        f << text;
    }
}

int run_factorize(int n, int k, const std::string& out, bool pretty) {
    FamilyData d = build_family({n, k});
    json j = d.to_json();
    j["command"] = "factorize";
    j["pass"] = true;
    emit(j, out, pretty);
    return 0;
}

int run_verify(int n, int k, const std::string& out, bool pretty) {
    FamilyParameters params{n, k};
    params.validate();
    json j;
    j["command"] = "verify";
    j["n"] = n;
    j["k"] = k;
    j["g"] = params.genus();
    bool pass = true;

    SurfaceComplex cover = build_cover(params);
    HomologyModel model = build_homology(cover);
    FamilyData fam = build_family(params);

    IntMat w = monodromy_matrix(model, fam.wtilde);
    bool shadow = w == zeta_star(model);
    j["checks"]["monodromy_equals_zeta_star"] = shadow;
    if (!shadow) {
        j["diff"]["monodromy_equals_zeta_star"]["computed"] = matrix_json(w);
        j["diff"]["monodromy_equals_zeta_star"]["expected"] = matrix_json(zeta_star(model));
        pass = false;
    }

    int order = matrix_order(zeta_star(model), k);
    j["checks"]["zeta_star_order"]["computed"] = order;
    j["checks"]["zeta_star_order"]["expected"] = k;
    pass = pass && order == k;

    Relator rel = resolve(model, fam.relator);
    bool rel_id = relator_monodromy(rel).is_identity();
    j["checks"]["relator_monodromy_identity"] = rel_id;
    pass = pass && rel_id;

    long expect_factors = 3L * n * k - 2 * n + k;
    j["checks"]["wtilde_factor_count"]["computed"] = fam.wtilde.size();
    j["checks"]["wtilde_factor_count"]["expected"] = expect_factors;
    pass = pass && long(fam.wtilde.size()) == expect_factors;

    j["pass"] = pass;
    emit(j, out, pretty);
    return pass ? 0 : 1;
}

int run_invariants(int n, int k, long budget, const std::string& out, bool pretty) {
    FibrationReport rep = fibration_report({n, k}, budget);
    json j = rep.to_json();
    j["command"] = "invariants";
    j["pass"] = rep.consistent;
    emit(j, out, pretty);
    return rep.consistent ? 0 : 1;
}

int run_braid_check(int n, int witness_len, const std::string& out, bool pretty) {
    if (n < 1) throw ValueError("braid-check needs n >= 1");
    json j;
    j["command"] = "braid-check";
    j["n"] = n;
    j["strands"] = 2 * n + 2;

    BraidWord w = sphere_braid_word(n);
    FamilyParameters params{n, 3};
    TwistWord sigma;
    for (int x : w.letters) sigma.letters.push_back({SymKind::Sigma, std::abs(x), 0, x > 0 ? 1 : -1});
    bool psi_id = psi(sigma, params).is_identity();
    j["checks"]["psi_identity"] = psi_id;
    j["checks"]["exponent_sum"]["computed"] = w.exponent_sum();
    j["checks"]["exponent_sum"]["expected"] = 4 * n + 2;
    bool expsum_ok = w.exponent_sum() == 4 * n + 2;

    auto witness = witness_search(w, witness_len);
    j["witness"]["search_budget"] = witness_len;
    bool verified = false;
    if (witness) {
        verified = kernel_witness_check(w, *witness);
        json entries = json::array();
        for (const auto& e : *witness) {
            json je;
            je["conjugator"] = e.conjugator.letters;
            je["generator"] = witness_gen_name(e.gen);
            entries.push_back(je);
        }
        j["witness"]["found"] = true;
        j["witness"]["entries"] = entries;
        j["witness"]["verified"] = verified;
    } else {
        j["witness"]["found"] = false;  // bounded search exhausted; not a failure
    }

    bool pass = psi_id && expsum_ok && (!witness || verified);
    j["pass"] = pass;
    emit(j, out, pretty);
    return pass ? 0 : 1;
}

int run_chain_reduce(int k, const std::string& out, bool pretty) {
    FamilyParameters params{1, k};
    params.validate();
    SurfaceComplex cover = build_cover(params);
    HomologyModel model = build_homology(cover);
    ChainReduction red = chain_reduction_script(cover, model);

    // name factors by catalogued curves; the two outer families coincide for
    // n = 1, prefer the lower index
    std::map<IntVec, std::string> names;
    for (int i = 2 * params.n + 1; i >= 1; --i)
        for (int l = 1; l <= k; ++l)
            names[canonical_sign(model.gamma(i, l))] = CurveLabel{CurveLabel::Kind::GammaUp, i, l}.str();
    for (int i = 1; i <= params.n; ++i)
        for (int l = 1; l < k; ++l)
            names[canonical_sign(model.alpha(i, l))] = CurveLabel{CurveLabel::Kind::AlphaUp, i, l}.str();

    json j;
    j["command"] = "chain-reduce";
    j["n"] = 1;
    j["k"] = k;
    j["g"] = params.genus();
    j["steps"] = red.steps.size();
    json moves = json::array();
    for (const auto& s : red.steps)
        moves.push_back({{"position", s.position}, {"direction", s.dir == HurwitzDir::Left ? "left" : "right"}});
    j["moves"] = moves;
    json factors = json::array();  // display order
    for (auto it = red.final_relator.factors.rbegin(); it != red.final_relator.factors.rend(); ++it)
        factors.push_back(names.at(canonical_sign(it->cls)));
    j["final_relator"] = factors;
    j["final_factor_count"] = red.final_relator.size();
    j["chain_block_length"] = 2 * k - 1;
    j["repetitions"] = 2 * k;
    j["monodromy_invariant"] = true;  // enforced at every step by the script
    j["pattern_match"] = true;        // enforced by the script's final check
    j["pass"] = true;
    emit(j, out, pretty);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for the balanced superelliptic twist factorization and its fibration invariants"};
    app.require_subcommand(1);

    std::string out_path;
    bool pretty = false;
    app.add_option("--out", out_path, "write the JSON report to a file instead of stdout");
    app.add_flag("--pretty", pretty, "indent the JSON report");

    int n = 1, k = 3;
    long budget = 1000000;
    int witness_len = 8;

    auto* factorize = app.add_subcommand("factorize", "emit the factorization, relator, and curve inventory");
    factorize->add_option("n", n, "number of handle columns")->required();
    factorize->add_option("k", k, "sheet count / rotation order")->required();

    auto* verify = app.add_subcommand("verify", "verify the factorization at the homology level");
    verify->add_option("n", n)->required();
    verify->add_option("k", k)->required();

    auto* invariants = app.add_subcommand("invariants", "fibration invariants report");
    invariants->add_option("n", n)->required();
    invariants->add_option("k", k)->required();
    invariants->add_option("--budget-cosets", budget, "coset enumeration budget (default 10^6)");

    auto* braid = app.add_subcommand("braid-check", "sphere-level braid evidence");
    braid->add_option("n", n)->required();
    braid->add_option("--witness-len", witness_len, "conjugator search length (default 8)");

    auto* chain = app.add_subcommand("chain-reduce", "scripted reduction to the chain relator (n = 1)");
    chain->add_option("k", k)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit 2
    }

    try {
        if (factorize->parsed()) return run_factorize(n, k, out_path, pretty);
        if (verify->parsed()) return run_verify(n, k, out_path, pretty);
        if (invariants->parsed()) return run_invariants(n, k, budget, out_path, pretty);
        if (braid->parsed()) return run_braid_check(n, witness_len, out_path, pretty);
        if (chain->parsed()) return run_chain_reduce(k, out_path, pretty);
    } catch (const ValueError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        json j;
        j["error"] = e.what();
        j["pass"] = false;
        std::cout << j.dump() << "\n";
        return 1;
    }
    return 2;
}
