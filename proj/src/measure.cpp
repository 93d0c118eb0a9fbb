#include "ncr/measure.hpp"

#include <nlohmann/json.hpp>

namespace ncr {

Dyadic MeasureOracle::mass(const BitString& sigma) const {
  if (!exact())
    throw ValidationError("exact mass requested from an interval oracle");
  return mass_interval(sigma, 0).lo;
}

std::string MeasureOracle::describe() const { return spec().dump(); }

void SplitTree::validate() const {
  for (const auto& [node, ratio] : nodes) {
    for (char c : node)
      if (c != '0' && c != '1')
        throw ValidationError("split tree: bad node key '" + node + "'");
    if (!(ratio > Dyadic(0) && ratio < Dyadic(1)))
      throw ValidationError("split tree: ratio at '" + node +
                            "' not in (0,1): " + ratio.str());
  }
}

namespace {

class LebesgueMeasure final : public MeasureOracle {
 public:
  DyadicInterval mass_interval(const BitString& sigma,
                               unsigned /*precision*/) const override {
    return DyadicInterval::point(mass(sigma));
  }
  bool exact() const override { return true; }
  Dyadic mass(const BitString& sigma) const override {
    return Dyadic(1, sigma.size());
  }
  std::optional<Dyadic> max_mass_closed_form(std::size_t depth) const override {
    return Dyadic(1, depth);
  }
  nlohmann::json spec() const override {
    return nlohmann::json{{"kind", "lebesgue"}};
  }
};

class BernoulliMeasure final : public MeasureOracle {
 public:
  explicit BernoulliMeasure(Dyadic p) : p_(std::move(p)), q_(Dyadic(1) - p_) {}

  DyadicInterval mass_interval(const BitString& sigma,
                               unsigned /*precision*/) const override {
    return DyadicInterval::point(mass(sigma));
  }
  bool exact() const override { return true; }
  Dyadic mass(const BitString& sigma) const override {
    Dyadic m = 1;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      m *= sigma.bit(i) ? p_ : q_;
    return m;
  }
  std::optional<Dyadic> max_mass_closed_form(std::size_t depth) const override {
    const Dyadic& big = p_ >= q_ ? p_ : q_;
    Dyadic m = 1;
    for (std::size_t i = 0; i < depth; ++i) m *= big;
    return m;
  }
  nlohmann::json spec() const override {
    return nlohmann::json{{"kind", "bernoulli"}, {"p", p_.str()}};
  }

 private:
  Dyadic p_, q_;
};

class SplitTreeMeasure final : public MeasureOracle {
 public:
  explicit SplitTreeMeasure(SplitTree t) : tree_(std::move(t)) {
    tree_.validate();
  }

  DyadicInterval mass_interval(const BitString& sigma,
                               unsigned /*precision*/) const override {
    return DyadicInterval::point(mass(sigma));
  }
  bool exact() const override { return true; }
  Dyadic mass(const BitString& sigma) const override {
    Dyadic m = 1;
    std::string node;
    node.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      Dyadic ratio(1, 1);
      auto it = tree_.nodes.find(node);
      if (it != tree_.nodes.end()) ratio = it->second;
      m *= sigma.bit(i) ? Dyadic(1) - ratio : ratio;
      node.push_back(sigma.bit(i) ? '1' : '0');
    }
    return m;
  }
  nlohmann::json spec() const override {
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [node, ratio] : tree_.nodes) nodes[node] = ratio.str();
    return nlohmann::json{{"kind", "split"}, {"nodes", nodes}};
  }

 private:
  SplitTree tree_;
};

class PerfectSetMeasure final : public MeasureOracle {
 public:
  explicit PerfectSetMeasure(ModulusFunction f) : f_(std::move(f)) {}

  DyadicInterval mass_interval(const BitString& sigma,
                               unsigned /*precision*/) const override {
    return DyadicInterval::point(mass(sigma));
  }
  bool exact() const override { return true; }
  Dyadic mass(const BitString& sigma) const override {
    STreePosition pos = s_tree_classify(f_, sigma);
    if (!pos.on_tree) return Dyadic(0);
    return Dyadic(1, pos.completed_choice_bits);
  }
  nlohmann::json spec() const override {
    return nlohmann::json{{"kind", "perfect_set"}, {"modulus", f_.to_json()}};
  }

 private:
  ModulusFunction f_;
};

}  // namespace

MeasurePtr lebesgue() { return std::make_shared<LebesgueMeasure>(); }

MeasurePtr bernoulli(const Dyadic& p) {
  if (!(p > Dyadic(0) && p < Dyadic(1)))
    throw ValidationError("bernoulli: p must be strictly between 0 and 1, got " +
                          p.str());
  return std::make_shared<BernoulliMeasure>(p);
}

MeasurePtr split_tree_measure(SplitTree t) {
  return std::make_shared<SplitTreeMeasure>(std::move(t));
}

MeasurePtr perfect_set_measure(ModulusFunction f) {
  return std::make_shared<PerfectSetMeasure>(std::move(f));
}

STreePosition s_tree_classify(const ModulusFunction& f,
                              const BitString& sigma) {
  STreePosition pos;
  std::size_t i = 0;            // cursor into sigma
  std::size_t block_start = 0;  // length of the S_n element built so far
  while (i < sigma.size()) {
    std::uint64_t run = f.eval_small(block_start);
    // forced 1-run
    for (std::uint64_t r = 0; r < run && i < sigma.size(); ++r, ++i)
      if (sigma.bit(i) != 1) return pos;  // off_tree
    if (i >= sigma.size()) break;
    // forced 0 separator
    if (sigma.bit(i) != 0) return pos;
    ++i;
    if (i >= sigma.size()) break;
    // free choice bit
    ++i;
    ++pos.completed_choice_bits;
    block_start += run + 2;
  }
  pos.on_tree = true;
  return pos;
}

MeasurePtr load_measure(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw ParseError("measure spec: expected object with \"kind\"");
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "lebesgue") {
    return lebesgue();
  } else if (kind == "bernoulli") {
    return bernoulli(Dyadic::parse(spec.at("p").get<std::string>()));
  } else if (kind == "split") {
    SplitTree t;
    if (spec.contains("nodes")) {
      for (const auto& [node, ratio] : spec.at("nodes").items()) {
        BitString::from_string(node);  // key validation
        t.nodes.emplace(node, Dyadic::parse(ratio.get<std::string>()));
      }
    }
    return split_tree_measure(std::move(t));
  } else if (kind == "perfect_set") {
    return perfect_set_measure(ModulusFunction::from_json(spec.at("modulus")));
  }
  throw ParseError("measure spec: unknown kind '" + kind + "'");
}

MeasurePtr load_measure(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr,
                                           /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw ParseError("measure spec: malformed JSON: " + json_text);
  return load_measure(j);
}

}  // namespace ncr
