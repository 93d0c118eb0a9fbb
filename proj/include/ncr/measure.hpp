#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ncr/bits.hpp"
#include "ncr/dyadic.hpp"
#include "ncr/modulus.hpp"

namespace ncr {

// Cylinder-mass oracle for a continuous probability measure on Cantor
// space. `mass_interval(sigma, k)` returns a two-sided enclosure of
// mu[sigma] of width <= 2^{-k}; exact oracles return zero-width intervals.
//
// This interface is the artifact's stand-in for measure representations:
// anything a representation real provides here is a two-sided effective
// approximation to cylinder masses, so that is what the oracle exposes.
class MeasureOracle {
 public:
  virtual ~MeasureOracle() = default;

  virtual DyadicInterval mass_interval(const BitString& sigma,
                                       unsigned precision) const = 0;

  // True when every cylinder mass is an exactly representable dyadic and
  // mass_interval always returns zero-width intervals.
  virtual bool exact() const { return false; }

  // Exact mass; only valid when exact().
  virtual Dyadic mass(const BitString& sigma) const;

  // Closed-form maximum cylinder mass at the given depth, when the family
  // admits one (Lebesgue, Bernoulli). Enables tables far beyond the
  // exhaustive depth cap.
  virtual std::optional<Dyadic> max_mass_closed_form(std::size_t depth) const {
    return std::nullopt;
  }

  virtual nlohmann::json spec() const = 0;
  std::string describe() const;
};

using MeasurePtr = std::shared_ptr<const MeasureOracle>;

// Finite map from tree nodes to left-child split ratios in (0,1); nodes
// not in the map split 1/2.
struct SplitTree {
  std::map<std::string, Dyadic> nodes;

  void validate() const;
};

MeasurePtr lebesgue();
MeasurePtr bernoulli(const Dyadic& p);
MeasurePtr split_tree_measure(SplitTree t);
MeasurePtr perfect_set_measure(ModulusFunction f);

MeasurePtr load_measure(const nlohmann::json& spec);
MeasurePtr load_measure(const std::string& json_text);

// Classification of a finite string against the perfect-set tree built
// from modulus f: blocks 1^{f(L)} ^ 0 ^ x repeated, x a free choice bit.
struct STreePosition {
  bool on_tree = false;
  std::size_t completed_choice_bits = 0;
};

STreePosition s_tree_classify(const ModulusFunction& f, const BitString& sigma);

}  // namespace ncr
