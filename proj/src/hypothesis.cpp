#include "papqr/hypothesis.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace papqr {

Hypothesis Hypothesis::make_threshold(double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("threshold cutoff must be finite");
  Hypothesis h;
  h.kind = Kind::threshold;
  h.cutoff = t;
  return h;
}

Hypothesis Hypothesis::make_stump(std::int32_t i) {
  if (i < 1) throw std::invalid_argument("stump index must satisfy i >= 1");
  Hypothesis h;
  h.kind = Kind::stump;
  h.coordinate = i;
  return h;
}

Hypothesis Hypothesis::make_table(std::vector<std::int8_t> labels) {
  for (std::int8_t v : labels) {
    if (v != 1 && v != -1)
      throw std::invalid_argument("table labels must be +1 or -1");
  }
  Hypothesis h;
  h.kind = Kind::table;
  h.labels = std::move(labels);
  return h;
}

std::int8_t evaluate(const Hypothesis& h, const DomainPoint& x) {
  switch (h.kind) {
    case Hypothesis::Kind::threshold:
      return as_real(x) <= h.cutoff ? std::int8_t{1} : std::int8_t{-1};
    case Hypothesis::Kind::stump: {
      const SignVector& s = as_signs(x);
      if (h.coordinate < 1 ||
          static_cast<std::size_t>(h.coordinate) > s.size())
        throw DomainMismatchError("stump index out of range for point");
      return s[static_cast<std::size_t>(h.coordinate - 1)];
    }
    case Hypothesis::Kind::table: {
      const std::int32_t id = as_element(x);
      if (id < 0 || static_cast<std::size_t>(id) >= h.labels.size())
        throw DomainMismatchError("element id outside the declared domain");
      return h.labels[static_cast<std::size_t>(id)];
    }
  }
  throw std::logic_error("unreachable hypothesis kind");
}

std::vector<std::int8_t> signature(const Hypothesis& h,
                                   std::span<const DomainPoint> points) {
  std::vector<std::int8_t> sig;
  sig.reserve(points.size());
  for (const DomainPoint& p : points) sig.push_back(evaluate(h, p));
  return sig;
}

HypothesisClass HypothesisClass::all_thresholds(double lo, double hi) {
  if (!(lo < hi))
    throw std::invalid_argument("threshold class needs lo < hi");
  HypothesisClass c;
  c.kind = Kind::thresholds;
  c.lo = lo;
  c.hi = hi;
  c.vc = 1;
  c.dual_vc = 1;
  return c;
}

HypothesisClass HypothesisClass::all_stumps(std::int32_t p) {
  if (p < 1) throw std::invalid_argument("stump class needs p >= 1");
  HypothesisClass c;
  c.kind = Kind::stumps;
  c.dimension = p;
  c.vc = std::max(1, static_cast<int>(std::floor(std::log2(double(p)))));
  c.dual_vc = p;
  return c;
}

HypothesisClass HypothesisClass::finite_class(std::int32_t domain_size,
                                              std::vector<Hypothesis> members,
                                              int declared_vc,
                                              int declared_dual_vc) {
  if (domain_size < 1)
    throw std::invalid_argument("finite class needs a nonempty domain");
  if (members.empty())
    throw std::invalid_argument("finite class needs at least one hypothesis");
  std::map<std::vector<std::int8_t>, std::size_t> seen;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Hypothesis& h = members[k];
    if (h.kind != Hypothesis::Kind::table ||
        h.labels.size() != static_cast<std::size_t>(domain_size))
      throw std::invalid_argument(
          "finite-class members must be tables over the declared domain");
    auto [it, inserted] = seen.emplace(h.labels, k);
    if (!inserted)
      throw std::invalid_argument(
          "finite class contains duplicate label behavior (members " +
          std::to_string(it->second) + " and " + std::to_string(k) + ")");
  }
  HypothesisClass c;
  c.kind = Kind::finite;
  c.domain_size = domain_size;
  c.members = std::move(members);
  c.vc = declared_vc;
  c.dual_vc = declared_dual_vc;
  return c;
}

std::vector<DomainPoint> HypothesisClass::finite_domain_points() const {
  if (kind != Kind::finite)
    throw UnsupportedError("finite_domain_points: class has no finite domain");
  std::vector<DomainPoint> pts;
  pts.reserve(static_cast<std::size_t>(domain_size));
  for (std::int32_t id = 0; id < domain_size; ++id)
    pts.emplace_back(ElementId{id});
  return pts;
}

}  // namespace papqr
