#pragma once

#include <vector>

#include "itl/formula.hpp"
#include "itl/model.hpp"

namespace itl {

/// Truth sets of every member of a closure set, computed bottom-up.
/// sets[i][w] holds iff the i-th member of `sigma` is true at world w.
struct TruthAssignment {
  ClosureSet sigma;
  std::vector<std::vector<bool>> sets;

  const std::vector<bool>& truth_set(int index) const {
    return sets.at(static_cast<std::size_t>(index));
  }
  const std::vector<bool>& truth_set(const Formula& f) const;
  bool holds_at(const Formula& f, int world) const;
};

/// Intuitionistic satisfaction over a finite dynamic model:
///   [[p]] = {w | p in V(w)}                [[false]] = {}
///   [[a & b]], [[a | b]] pointwise
///   [[a -> b]] = {w | every v >= w in [[a]] is in [[b]]}
///   [[X a]] = succ-preimage of [[a]]
///   [[F a]] = worlds whose succ-orbit meets [[a]]
///   [[G a]] = worlds whose entire succ-orbit stays in [[a]]
TruthAssignment evaluate(const DynamicModel& m, const ClosureSet& sigma);
TruthAssignment evaluate(const DynamicModel& m, const Formula& f);

bool holds(const DynamicModel& m, int world, const Formula& f);

/// Members of `sigma` true at `world`, as formulas and as indexes.
std::vector<Formula> sigma_set(const DynamicModel& m, const ClosureSet& sigma,
                               int world);
SigmaSubset sigma_index_set(const TruthAssignment& ta, int world);

/// A pending temporal obligation: an F-formula that holds (and must be
/// witnessed along the orbit) or a G-formula that fails (and must be
/// refuted along the orbit).
struct Eventuality {
  int world;
  Formula formula;  // Eventually(...) or Henceforth(...)
  bool is_eventually() const { return formula.is(Connective::Eventually); }
};

std::vector<Eventuality> eventualities(const DynamicModel& m,
                                       const ClosureSet& sigma);

/// The orbit prefix discharging an eventuality: worlds succ^0(w)..succ^n(w)
/// where the subformula first flips. Always has length <= |W|.
struct Fulfillment {
  std::vector<int> worlds;
};

Fulfillment fulfillment(const DynamicModel& m, const Eventuality& e);

/// Classical semantics on identity-order models: implication is material
/// and evaluated per world. Throws if the order is not the identity.
TruthAssignment classical_evaluate(const DynamicModel& m, const ClosureSet& sigma);
TruthAssignment classical_evaluate(const DynamicModel& m, const Formula& f);

}  // namespace itl
