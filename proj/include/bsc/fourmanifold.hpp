#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsc/homology.hpp"

#include "json.hpp"

namespace bsc {

// number of singular fibers of the fibration attached to (wtilde)^k
long singular_fiber_count(const FamilyParameters& params);

// Euler characteristic of the total space, computed by the closed formula and
// by -4(g-1)+s; throws InternalError if the two routes disagree.
Int euler_characteristic(const FamilyParameters& params);

enum class Pi1Result { Trivial, UnknownAtBudget };

struct CosetStats {
    long cosets_defined = 0;  // total allocations, dead ones included
    long live_cosets = 0;
    bool closed = false;
};

// Todd-Coxeter enumeration of the trivial subgroup (HLT, deterministic).
// Returns the index when the table closes within the budget, else nullopt.
// The optional Tietze pre-pass shrinks the presentation first; the certified
// index is unaffected either way.
std::optional<long> coset_enumerate(const GroupPresentation& pres,
                                    const std::vector<std::vector<int>>& extra_relators,
                                    long max_cosets, CosetStats* stats = nullptr,
                                    bool tietze_prepass = false);

// vanishing-cycle words for every lifted gamma curve, in label order
std::vector<std::vector<int>> gamma_vanishing_words(const SurfaceComplex& cover,
                                                    const HomologyModel& model,
                                                    const GroupPresentation& pres);

Pi1Result pi1_total_space(const SurfaceComplex& cover, const HomologyModel& model,
                          long coset_budget, CosetStats* stats = nullptr);

// invariant factors (entries > 1) of H1 of the total space; empty = trivial
std::vector<Int> h1_total_space(const SurfaceComplex& cover, const HomologyModel& model);
// generic abelianization helper: invariant factors > 1 followed by 0 per free rank
std::vector<Int> abelian_invariants(int ngens, const std::vector<std::vector<int>>& relators);

// Meyer signature cocycle on Sp(2g, Z); inputs must be symplectic for J
int meyer_cocycle(const IntMat& A, const IntMat& B, const IntMat& J);

// Signature of the Lefschetz fibration over the sphere attached to a positive
// relator with identity monodromy: accumulated Meyer cocycle values along the
// partial products. Exact; all vanishing cycles must be homologically
// essential (nonseparating), which is checked.
Int relator_signature(const Relator& relator);
Int signature(const HomologyModel& model, const Relator& relator);

struct ChainReductionStep {
    size_t position;
    HurwitzDir dir;
};

struct ChainReduction {
    Relator final_relator;
    std::vector<ChainReductionStep> steps;
    Relator initial_relator;
};

// The scripted reduction of (wtilde)^k for n = 1 to the (2g+1)-chain pattern
// repeated 2g+2 times. Verifies monodromy invariance at every step.
ChainReduction chain_reduction_script(const SurfaceComplex& cover, const HomologyModel& model);

// the expected final class pattern, canonical signs, acting order
std::vector<IntVec> chain_pattern_classes(const HomologyModel& model);

struct FibrationReport {
    FamilyParameters params;
    long s = 0;
    Int chi;
    std::string pi1;  // "trivial" | "unknown_at_budget"
    std::vector<Int> h1;
    bool spin = false;
    bool spin_witness_found = false;
    std::vector<int> spin_witness_q;  // 0/1 values on the model basis, when found
    Int sigma;
    Int b2;
    bool consistent = false;  // all internal identities passed
    nlohmann::json provenance;

    nlohmann::json to_json() const;
};

FibrationReport fibration_report(const FamilyParameters& params, long coset_budget);

}  // namespace bsc
