#include "uadb/verify.hpp"

#include <chrono>
#include <sstream>

#include "uadb/errors.hpp"

namespace uadb {

namespace {

struct Labeled {
  Database world;
  Database labeling;
};

Labeled label_model(const Model& model, std::uint64_t seed,
                    bool ti_include_optionals) {
  Labeled out;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        KRelation world = [&] {
          if constexpr (std::is_same_v<T, TIDB>) {
            return m.has_probabilities() ? bgw_ti(m)
                                         : bgw_ti(m, ti_include_optionals);
          } else if constexpr (std::is_same_v<T, XDB>) {
            return bgw_xdb(m, seed);
          } else {
            return bgw_ctable(m, seed);
          }
        }();
        KRelation labeling = [&] {
          if constexpr (std::is_same_v<T, TIDB>) {
            return label_ti(m);
          } else if constexpr (std::is_same_v<T, XDB>) {
            return label_xdb(m);
          } else {
            return label_ctable(m);
          }
        }();
        std::string name = world.schema().name.empty()
                               ? std::string("R")
                               : world.schema().name;
        world.rename(name);
        labeling.rename(name);
        out.world.emplace(name, to_bag(world));
        out.labeling.emplace(name, to_bag(labeling));
      },
      model);
  return out;
}

}  // namespace

UADB model_to_uadb(const Model& model, std::uint64_t seed,
                   bool ti_include_optionals) {
  Labeled l = label_model(model, seed, ti_include_optionals);
  return make_uadb(l.world, l.labeling);
}

WorldDB expand_model(const Model& model, std::uint64_t budget) {
  return std::visit(
      [&](const auto& m) { return expand_model_to_worlds(m, budget); }, model);
}

VerifyResult verify_query(const Model& model, const Query& q,
                          std::uint64_t budget, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();

  UADB ua = model_to_uadb(model, seed);
  KRelation labeled = eval_ua(ua, q);

  WorldDB worlds = to_bag(expand_model(model, budget));
  KRelation oracle = oracle_certain(worlds, q, budget);

  MetricsReport m;
  for (const auto& [t, cert] : oracle.rows()) {
    ++m.oracle_certain_count;
    const Element out = labeled.annotation(t);
    const Element c = out.is_pair() ? out.pair_c() : Element(std::uint64_t{0});
    if (!Semiring::natural().leq(c, cert))
      throw InvariantViolation("labeled bound exceeds the certain annotation "
                               "for tuple " +
                               to_display(t));
    if (c.as_nat() == 0) ++m.false_negatives;
  }
  for (const auto& [t, pair] : labeled.rows()) {
    if (pair.pair_c().as_nat() == 0) continue;
    ++m.labeled_certain_count;
    if (!oracle.contains(t)) {
      ++m.false_positives;
      throw InvariantViolation("tuple " + to_display(t) +
                               " is labeled certain but not certain");
    }
  }
  if (m.oracle_certain_count > 0)
    m.false_negative_rate = static_cast<double>(m.false_negatives) /
                            static_cast<double>(m.oracle_certain_count);
  if (m.labeled_certain_count > 0)
    m.false_positive_rate = static_cast<double>(m.false_positives) /
                            static_cast<double>(m.labeled_certain_count);

  const auto end = std::chrono::steady_clock::now();
  m.runtime_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  return VerifyResult{m, std::move(labeled), std::move(oracle)};
}

std::string render_metrics(const MetricsReport& m) {
  std::ostringstream out;
  out << "oracle certain answers: " << m.oracle_certain_count << '\n'
      << "labeled certain answers: " << m.labeled_certain_count << '\n'
      << "false negatives: " << m.false_negatives
      << " (rate " << m.false_negative_rate << ")\n"
      << "false positives: " << m.false_positives
      << " (rate " << m.false_positive_rate << ")\n"
      << "runtime: " << m.runtime_ms << " ms\n";
  return out.str();
}

}  // namespace uadb
