#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bsc/cover.hpp"

namespace bsc {

// q-values on the model basis; evaluation everywhere else goes through the
// extension rule q(x+y) = q(x) + q(y) + x.y (mod 2)
struct QuadraticFormWitness {
    std::vector<int> q;  // 0/1 per basis vector
};

// Exact H1 model of the cover: tree-cotree fundamental-cycle basis, dual
// fundamental cocycles, cup-product intersection form, curve classes, deck
// action. All data immutable after build_homology.
struct HomologyModel {
    FamilyParameters params;
    int g2 = 0;  // rank 2g
    std::shared_ptr<const IntMat> form;  // intersection form J, det 1
    IntMat zeta;                         // deck action on H1

    std::map<std::pair<int, int>, IntVec> gamma_cls;  // (i, l) 1-based
    std::map<std::pair<int, int>, IntVec> alpha_cls;  // (i, l) 1-based
    std::vector<int> label_shifts;                    // calibration record, index i-1

    // internals kept for coordinates and tests
    std::vector<LiftedCycle> basis_cycles;        // fundamental cycles z_1..z_{2g}
    std::vector<std::vector<int>> cocycles;       // alpha_1..alpha_{2g} over edge lifts
    std::vector<int> leftover_edges;              // the 2g tree-cotree leftover edge lifts

    const IntMat& J() const { return *form; }
    Int pair(const IntVec& x, const IntVec& y) const;
    IntVec coords(const LiftedCycle& c) const;  // homology class of a cycle
    const IntVec& gamma(int i, int l) const;
    const IntVec& alpha(int i, int l) const;
    IntVec class_of(const CurveLabel& label) const;

    // all vanishing-cycle classes of the fibration: every gamma, every alpha
    std::vector<IntVec> vanishing_classes() const;
    std::vector<IntVec> gamma_classes() const;

    // mod-2 evaluation of a quadratic form (values on the basis) via the
    // extension rule
    int evaluate_quadratic(const QuadraticFormWitness& q, const IntVec& cls) const;
};

// Builds the model from the cover: basis and form, gamma classes from lifted
// cycles (labels calibrated against the mod-2 relations and the deck shadow of
// the factorization), alpha classes by the constrained sign derivation.
HomologyModel build_homology(const SurfaceComplex& cover);

// x -> x + <x,c> c
IntMat transvection(const HomologyModel& m, const IntVec& c);

// product of transvections of a twist word over resolved curve labels,
// rightmost letter applied first
IntMat monodromy_matrix(const HomologyModel& m, const TwistWord& w);

const IntMat& zeta_star(const HomologyModel& m);

// attach classes (and the form) to a relator's factors
Relator resolve(const HomologyModel& m, const Relator& r);

// Stipsicz criterion for the fibration restricted over the disk: a quadratic
// form with q = 1 on every given class, if one exists (lexicographically least
// witness), else nullopt.
std::optional<QuadraticFormWitness> spin_fiber_complement(const HomologyModel& m,
                                                          const std::vector<IntVec>& vanishing);

// total-space decision: spin iff the complement has a witness and some dual
// section class has even square
bool spin_total(const std::optional<QuadraticFormWitness>& fiber, int section_square);

// exposed for tests: recompute alpha classes by the constrained sign search
void derive_alpha_classes(HomologyModel& m);

}  // namespace bsc
