#include "papqr/repdomain.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace papqr {

std::size_t RepresentativeDomain::locate(const DomainPoint& x) const {
  switch (kind) {
    case HypothesisClass::Kind::thresholds: {
      const double v = as_real(x);
      // Cell j holds the points in (t_j, t_{j+1}]; count cutoffs < v.
      return static_cast<std::size_t>(
          std::lower_bound(cutoffs.begin(), cutoffs.end(), v) -
          cutoffs.begin());
    }
    case HypothesisClass::Kind::stumps: {
      const SignVector& s = as_signs(x);
      if (s.size() != static_cast<std::size_t>(dimension))
        throw DomainMismatchError("locate: point dimension mismatch");
      std::size_t code = 0;
      for (std::size_t b = 0; b < coords.size(); ++b) {
        if (s[static_cast<std::size_t>(coords[b] - 1)] < 0)
          code |= std::size_t{1} << b;
      }
      return code;
    }
    case HypothesisClass::Kind::finite: {
      const std::int32_t id = as_element(x);
      if (id < 0 || static_cast<std::size_t>(id) >= element_to_rep.size())
        throw DomainMismatchError("locate: element outside declared domain");
      return static_cast<std::size_t>(element_to_rep[static_cast<std::size_t>(id)]);
    }
  }
  throw std::logic_error("unreachable domain kind");
}

RepresentativeDomain build_representative_domain(const CoverResult& cover,
                                                 const HypothesisClass& cls,
                                                 const RepDomainOptions& opts) {
  RepresentativeDomain rep;
  rep.kind = cls.kind;
  switch (cls.kind) {
    case HypothesisClass::Kind::thresholds: {
      std::set<double> cuts;
      for (const Hypothesis& h : cover.representatives) {
        if (h.kind != Hypothesis::Kind::threshold)
          throw DomainMismatchError("cover does not match the threshold class");
        cuts.insert(h.cutoff);
      }
      rep.cutoffs.assign(cuts.begin(), cuts.end());
      // M cutoffs split the line into M+1 cells (-inf,t1], (t1,t2], ...,
      // (tM, inf); pick midpoints, with the tails one unit outside.
      const std::size_t m = rep.cutoffs.size();
      rep.representatives.reserve(m + 1);
      for (std::size_t j = 0; j <= m; ++j) {
        double point;
        if (j == 0) {
          point = rep.cutoffs.front() - 1.0;
        } else if (j == m) {
          point = rep.cutoffs.back() + 1.0;
        } else {
          point = 0.5 * (rep.cutoffs[j - 1] + rep.cutoffs[j]);
        }
        rep.representatives.emplace_back(point);
      }
      break;
    }
    case HypothesisClass::Kind::stumps: {
      std::set<std::int32_t> queried;
      for (const Hypothesis& h : cover.representatives) {
        if (h.kind != Hypothesis::Kind::stump)
          throw DomainMismatchError("cover does not match the stump class");
        queried.insert(h.coordinate);
      }
      rep.coords.assign(queried.begin(), queried.end());
      rep.dimension = cls.dimension;
      if (rep.coords.size() > static_cast<std::size_t>(opts.max_bits))
        throw SizeLimitError(
            "representative domain would exceed 2^" +
            std::to_string(opts.max_bits) + " points");
      const std::size_t count = std::size_t{1} << rep.coords.size();
      rep.representatives.reserve(count);
      for (std::size_t code = 0; code < count; ++code) {
        SignVector s(static_cast<std::size_t>(cls.dimension), std::int8_t{1});
        for (std::size_t b = 0; b < rep.coords.size(); ++b) {
          if (code & (std::size_t{1} << b))
            s[static_cast<std::size_t>(rep.coords[b] - 1)] = -1;
        }
        rep.representatives.emplace_back(std::move(s));
      }
      break;
    }
    case HypothesisClass::Kind::finite: {
      const auto domain = cls.finite_domain_points();
      rep.element_to_rep.assign(domain.size(), -1);
      std::map<std::vector<std::int8_t>, std::int32_t> sig_to_rep;
      for (std::size_t id = 0; id < domain.size(); ++id) {
        std::vector<std::int8_t> sig;
        sig.reserve(cover.representatives.size());
        for (const Hypothesis& h : cover.representatives)
          sig.push_back(evaluate(h, domain[id]));
        auto [it, inserted] = sig_to_rep.emplace(
            std::move(sig), static_cast<std::int32_t>(rep.representatives.size()));
        if (inserted) rep.representatives.push_back(domain[id]);
        rep.element_to_rep[id] = it->second;
      }
      break;
    }
  }
  return rep;
}

std::vector<std::int32_t> map_dataset(const RepresentativeDomain& rep,
                                      std::span<const DomainPoint> points) {
  std::vector<std::int32_t> out;
  out.reserve(points.size());
  for (const DomainPoint& p : points)
    out.push_back(static_cast<std::int32_t>(rep.locate(p)));
  return out;
}

}  // namespace papqr
