#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "papqr/cover.hpp"
#include "papqr/distribution.hpp"
#include "papqr/release.hpp"

namespace papqr {

using Json = nlohmann::ordered_json;

Json point_to_json(const DomainPoint& p);
DomainPoint point_from_json(const Json& j, PointKind kind);
PointKind class_point_kind(const HypothesisClass& cls);

Json hypothesis_to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const Json& j);

Json class_to_json(const HypothesisClass& cls);
// Accepts both the kind-keyed form and the bare explicit document
// {"domain": [...], "hypotheses": [[+-1,...], ...], "weights": [...]}; the
// optional weights become a discrete distribution over the domain.
std::pair<HypothesisClass, std::optional<Distribution>> class_from_json(
    const Json& j);

Json distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const Json& j, PointKind kind);

Json cover_to_json(const CoverResult& cover, PointKind kind);
CoverResult cover_from_json(const Json& j, PointKind kind);

Json release_to_json(const ReleaseStructure& g);
ReleaseStructure release_from_json(const Json& j);

void write_text_file(const std::string& path, const std::string& body);
std::string read_text_file(const std::string& path);

}  // namespace papqr
