#include "papqr/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace papqr {

Json point_to_json(const DomainPoint& p) {
  switch (point_kind(p)) {
    case PointKind::real:
      return as_real(p);
    case PointKind::signs: {
      Json arr = Json::array();
      for (std::int8_t v : as_signs(p)) arr.push_back(static_cast<int>(v));
      return arr;
    }
    case PointKind::element:
      return as_element(p);
  }
  throw std::logic_error("unreachable point kind");
}

DomainPoint point_from_json(const Json& j, PointKind kind) {
  switch (kind) {
    case PointKind::real:
      return j.get<double>();
    case PointKind::signs: {
      SignVector s;
      for (const Json& v : j) s.push_back(static_cast<std::int8_t>(v.get<int>()));
      validate_signs(s);
      return s;
    }
    case PointKind::element:
      return ElementId{j.get<std::int32_t>()};
  }
  throw std::logic_error("unreachable point kind");
}

PointKind class_point_kind(const HypothesisClass& cls) {
  switch (cls.kind) {
    case HypothesisClass::Kind::thresholds: return PointKind::real;
    case HypothesisClass::Kind::stumps: return PointKind::signs;
    case HypothesisClass::Kind::finite: return PointKind::element;
  }
  throw std::logic_error("unreachable class kind");
}

Json hypothesis_to_json(const Hypothesis& h) {
  Json j;
  switch (h.kind) {
    case Hypothesis::Kind::threshold:
      j["kind"] = "threshold";
      j["t"] = h.cutoff;
      break;
    case Hypothesis::Kind::stump:
      j["kind"] = "stump";
      j["i"] = h.coordinate;
      break;
    case Hypothesis::Kind::table:
      j["kind"] = "table";
      j["labels"] = Json::array();
      for (std::int8_t v : h.labels) j["labels"].push_back(static_cast<int>(v));
      break;
  }
  return j;
}

Hypothesis hypothesis_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "threshold")
    return Hypothesis::make_threshold(j.at("t").get<double>());
  if (kind == "stump")
    return Hypothesis::make_stump(j.at("i").get<std::int32_t>());
  if (kind == "table") {
    std::vector<std::int8_t> labels;
    for (const Json& v : j.at("labels"))
      labels.push_back(static_cast<std::int8_t>(v.get<int>()));
    return Hypothesis::make_table(std::move(labels));
  }
  throw std::invalid_argument("unknown hypothesis kind: " + kind);
}

Json class_to_json(const HypothesisClass& cls) {
  Json j;
  switch (cls.kind) {
    case HypothesisClass::Kind::thresholds:
      j["kind"] = "thresholds";
      j["lo"] = cls.lo;
      j["hi"] = cls.hi;
      break;
    case HypothesisClass::Kind::stumps:
      j["kind"] = "stumps";
      j["p"] = cls.dimension;
      break;
    case HypothesisClass::Kind::finite: {
      j["kind"] = "explicit";
      Json dom = Json::array();
      for (std::int32_t id = 0; id < cls.domain_size; ++id) dom.push_back(id);
      j["domain"] = dom;
      Json rows = Json::array();
      for (const Hypothesis& h : cls.members) {
        Json row = Json::array();
        for (std::int8_t v : h.labels) row.push_back(static_cast<int>(v));
        rows.push_back(row);
      }
      j["hypotheses"] = rows;
      j["vc"] = cls.vc;
      j["dual_vc"] = cls.dual_vc;
      break;
    }
  }
  return j;
}

std::pair<HypothesisClass, std::optional<Distribution>> class_from_json(
    const Json& j) {
  std::string kind;
  if (j.contains("kind")) {
    kind = j.at("kind").get<std::string>();
  } else if (j.contains("domain") && j.contains("hypotheses")) {
    kind = "explicit";
  } else {
    throw std::invalid_argument("class document needs a kind or domain");
  }
  if (kind == "thresholds") {
    return {HypothesisClass::all_thresholds(j.value("lo", 0.0),
                                            j.value("hi", 1.0)),
            std::nullopt};
  }
  if (kind == "stumps") {
    return {HypothesisClass::all_stumps(j.at("p").get<std::int32_t>()),
            std::nullopt};
  }
  if (kind == "explicit") {
    const auto domain_size =
        static_cast<std::int32_t>(j.at("domain").size());
    std::vector<Hypothesis> members;
    for (const Json& row : j.at("hypotheses")) {
      std::vector<std::int8_t> labels;
      for (const Json& v : row)
        labels.push_back(static_cast<std::int8_t>(v.get<int>()));
      members.push_back(Hypothesis::make_table(std::move(labels)));
    }
    HypothesisClass cls = HypothesisClass::finite_class(
        domain_size, std::move(members), j.value("vc", 1),
        j.value("dual_vc", 1));
    std::optional<Distribution> dist;
    if (j.contains("weights")) {
      std::vector<double> weights = j.at("weights").get<std::vector<double>>();
      dist = Distribution::discrete(cls.finite_domain_points(),
                                    std::move(weights));
    }
    return {std::move(cls), std::move(dist)};
  }
  throw std::invalid_argument("unknown class kind: " + kind);
}

Json distribution_to_json(const Distribution& d) {
  Json j;
  switch (d.kind) {
    case Distribution::Kind::uniform_interval:
      j["kind"] = "uniform";
      j["lo"] = d.lo;
      j["hi"] = d.hi;
      break;
    case Distribution::Kind::discrete: {
      j["kind"] = "discrete";
      Json pts = Json::array();
      for (const DomainPoint& p : d.atoms) pts.push_back(point_to_json(p));
      j["points"] = pts;
      j["weights"] = d.weights;
      break;
    }
    case Distribution::Kind::product_signs:
      j["kind"] = "product";
      j["biases"] = d.biases;
      break;
  }
  return j;
}

Distribution distribution_from_json(const Json& j, PointKind kind) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "uniform")
    return Distribution::uniform(j.value("lo", 0.0), j.value("hi", 1.0));
  if (k == "discrete") {
    std::vector<DomainPoint> atoms;
    for (const Json& v : j.at("points"))
      atoms.push_back(point_from_json(v, kind));
    return Distribution::discrete(std::move(atoms),
                                  j.at("weights").get<std::vector<double>>());
  }
  if (k == "product")
    return Distribution::product_signs_dist(
        j.at("biases").get<std::vector<double>>());
  throw std::invalid_argument("unknown distribution kind: " + k);
}

Json cover_to_json(const CoverResult& cover, PointKind kind) {
  (void)kind;
  Json j;
  Json pts = Json::array();
  for (const DomainPoint& p : cover.public_points)
    pts.push_back(point_to_json(p));
  j["public_points"] = pts;
  Json pats = Json::array();
  if (cover.patterns.empty() && !cover.representatives.empty()) {
    // Large threshold covers skip materializing pattern vectors; rebuild
    // them from the representatives for the document.
    for (const Hypothesis& rep : cover.representatives) {
      Json row = Json::array();
      for (std::int8_t v :
           signature(rep, std::span<const DomainPoint>(cover.public_points)))
        row.push_back(static_cast<int>(v));
      pats.push_back(row);
    }
  } else {
    for (const auto& pat : cover.patterns) {
      Json row = Json::array();
      for (std::int8_t v : pat) row.push_back(static_cast<int>(v));
      pats.push_back(row);
    }
  }
  j["patterns"] = pats;
  Json reps = Json::array();
  for (const Hypothesis& h : cover.representatives)
    reps.push_back(hypothesis_to_json(h));
  j["representatives"] = reps;
  Json full = Json::array();
  for (const DomainPoint& p : cover.full_public_sample)
    full.push_back(point_to_json(p));
  j["full_public_sample"] = full;
  return j;
}

CoverResult cover_from_json(const Json& j, PointKind kind) {
  CoverResult cover;
  for (const Json& v : j.at("public_points"))
    cover.public_points.push_back(point_from_json(v, kind));
  for (const Json& row : j.at("patterns")) {
    std::vector<std::int8_t> pat;
    for (const Json& v : row)
      pat.push_back(static_cast<std::int8_t>(v.get<int>()));
    cover.patterns.push_back(std::move(pat));
  }
  for (const Json& v : j.at("representatives"))
    cover.representatives.push_back(hypothesis_from_json(v));
  for (const Json& v : j.at("full_public_sample"))
    cover.full_public_sample.push_back(point_from_json(v, kind));
  if (cover.representatives.size() != cover.patterns.size())
    throw std::invalid_argument("cover document: pattern/representative count");
  for (std::size_t k = 0; k < cover.patterns.size(); ++k)
    cover.pattern_lookup.emplace(cover.patterns[k], k);
  if (kind == PointKind::real) {
    // Threshold patterns are prefix patterns in sorted order; the number of
    // +1 entries recovers each pattern's sweep position.
    for (const DomainPoint& p : cover.public_points)
      cover.sweep_values.push_back(as_real(p));
    std::sort(cover.sweep_values.begin(), cover.sweep_values.end());
    cover.sweep_values.erase(
        std::unique(cover.sweep_values.begin(), cover.sweep_values.end()),
        cover.sweep_values.end());
    cover.sweep_pattern.assign(cover.sweep_values.size() + 1, 0);
    if (cover.patterns.size() != cover.sweep_pattern.size())
      throw std::invalid_argument("cover document: not a threshold sweep");
    for (std::size_t k = 0; k < cover.patterns.size(); ++k) {
      std::size_t ones = 0;
      for (std::int8_t v : cover.patterns[k]) ones += v > 0 ? 1u : 0u;
      cover.sweep_pattern[ones] = k;
    }
  }
  return cover;
}

Json release_to_json(const ReleaseStructure& g) {
  Json j;
  j["class"] = class_to_json(g.cls);
  j["cover"] = cover_to_json(g.cover, class_point_kind(g.cls));
  Json answers = Json::array();
  for (std::size_t k = 0; k < g.answers.size(); ++k) {
    Json entry;
    entry["pattern"] = k;
    entry["answer"] = g.answers[k];
    answers.push_back(entry);
  }
  j["answers"] = answers;
  j["flags"] = Json{{"budget_exhausted", g.budget_exhausted}};
  j["rep_domain_size"] = g.rep_domain_size;
  j["pmw_updates"] = g.pmw_updates;
  return j;
}

ReleaseStructure release_from_json(const Json& j) {
  ReleaseStructure g;
  auto [cls, dist] = class_from_json(j.at("class"));
  (void)dist;
  g.cls = std::move(cls);
  g.cover = cover_from_json(j.at("cover"), class_point_kind(g.cls));
  g.answers.assign(g.cover.patterns.size(), 0.0);
  for (const Json& entry : j.at("answers")) {
    const auto k = entry.at("pattern").get<std::size_t>();
    if (k >= g.answers.size())
      throw std::invalid_argument("release document: pattern id out of range");
    const double v = entry.at("answer").get<double>();
    if (!(v >= -1.0 && v <= 1.0))
      throw std::invalid_argument("release document: answer outside [-1, 1]");
    g.answers[k] = v;
  }
  g.budget_exhausted = j.at("flags").value("budget_exhausted", false);
  g.rep_domain_size = j.value("rep_domain_size", std::int64_t{0});
  g.pmw_updates = j.value("pmw_updates", 0);
  return g;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace papqr
