#include "ncr/modulus.hpp"

#include <nlohmann/json.hpp>

namespace ncr {

ModulusFunction ModulusFunction::poly(unsigned degree) {
  if (degree == 0)
    throw ValidationError("poly modulus: degree must be >= 1");
  ModulusFunction f;
  f.kind_ = Kind::Poly;
  f.degree_ = degree;
  f.strictly_increasing_ = true;
  return f;
}

ModulusFunction ModulusFunction::table(std::vector<std::uint64_t> values) {
  if (values.empty()) throw ValidationError("table modulus: empty table");
  bool strict = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1)
      throw ValidationError("table modulus: values must be >= 1");
    if (i > 0) {
      if (values[i] < values[i - 1])
        throw ValidationError("table modulus: values must be non-decreasing");
      strict = strict && values[i] > values[i - 1];
    }
  }
  ModulusFunction f;
  f.kind_ = Kind::Table;
  f.values_ = std::move(values);
  f.strictly_increasing_ = strict;
  return f;
}

ModulusFunction ModulusFunction::exp2() {
  ModulusFunction f;
  f.kind_ = Kind::Exp;
  f.strictly_increasing_ = true;
  return f;
}

mpz_class ModulusFunction::operator()(const mpz_class& n) const {
  if (n < 0) throw DomainEscape("modulus argument must be >= 0");
  switch (kind_) {
    case Kind::Poly: {
      mpz_class base = n + 1;
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), degree_);
      return r;
    }
    case Kind::Table: {
      if (n >= static_cast<unsigned long>(values_.size()))
        throw DomainEscape("table modulus: argument " + n.get_str() +
                           " beyond table of size " +
                           std::to_string(values_.size()));
      return mpz_class(static_cast<unsigned long>(values_[n.get_ui()]));
    }
    case Kind::Exp: {
      if (!n.fits_ulong_p())
        throw DomainEscape("exp modulus: argument too large");
      mpz_class r = 1;
      r <<= n.get_ui();
      return r;
    }
  }
  throw ValidationError("unreachable modulus kind");
}

std::uint64_t ModulusFunction::eval_small(std::uint64_t n) const {
  mpz_class v = (*this)(mpz_class(static_cast<unsigned long>(n)));
  if (!v.fits_ulong_p())
    throw DomainEscape("modulus value at " + std::to_string(n) +
                       " does not fit a machine word");
  return v.get_ui();
}

ModulusFunction ModulusFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("modulus spec: expected object with \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "poly") {
    return poly(j.at("degree").get<unsigned>());
  } else if (kind == "table") {
    return table(j.at("values").get<std::vector<std::uint64_t>>());
  } else if (kind == "exp") {
    return exp2();
  }
  throw ParseError("modulus spec: unknown kind '" + kind + "'");
}

nlohmann::json ModulusFunction::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::Poly:
      j["kind"] = "poly";
      j["degree"] = degree_;
      break;
    case Kind::Table:
      j["kind"] = "table";
      j["values"] = values_;
      break;
    case Kind::Exp:
      j["kind"] = "exp";
      break;
  }
  return j;
}

std::string ModulusFunction::describe() const {
  switch (kind_) {
    case Kind::Poly:
      return "poly(" + std::to_string(degree_) + ")";
    case Kind::Table:
      return "table[" + std::to_string(values_.size()) + "]";
    case Kind::Exp:
      return "exp";
  }
  return "?";
}

}  // namespace ncr
