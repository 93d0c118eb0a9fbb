#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncr/error.hpp"

namespace ncr {

// Total non-decreasing function f : N -> N with f(n) >= 1. Values can be
// astronomically large (the "exp" kind), hence the big-integer codomain.
class ModulusFunction {
 public:
  enum class Kind { Poly, Table, Exp };

  // f(n) = (n+1)^degree
  static ModulusFunction poly(unsigned degree);
  // f(n) = values[n]; errors past the end of the table
  static ModulusFunction table(std::vector<std::uint64_t> values);
  // f(n) = 2^n
  static ModulusFunction exp2();

  static ModulusFunction from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  mpz_class operator()(const mpz_class& n) const;
  mpz_class operator()(std::uint64_t n) const { return (*this)(mpz_class(static_cast<unsigned long>(n))); }

  // f(n) when the value is known to fit a machine word; errors otherwise.
  std::uint64_t eval_small(std::uint64_t n) const;

  Kind kind() const { return kind_; }
  bool strictly_increasing() const { return strictly_increasing_; }
  std::string describe() const;

 private:
  ModulusFunction() = default;

  Kind kind_ = Kind::Poly;
  unsigned degree_ = 1;
  std::vector<std::uint64_t> values_;
  bool strictly_increasing_ = true;
};

}  // namespace ncr
