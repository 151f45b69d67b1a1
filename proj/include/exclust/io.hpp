#pragma once

#include <string>

#include "exclust/instance.hpp"
#include "exclust/reductions.hpp"

namespace exclust {

// JSON instance files. Every number travels as an exact decimal string
// ("p" or "p/q"); radical values as arrays of [coeff, radicand] string
// pairs. parse(serialize(x)) reproduces x bit-exactly, and serialization
// is deterministic (stable field order, sorted meta keys).
std::string serialize_instance(const ClusteringInstance& inst);
ClusteringInstance parse_instance(const std::string& text);

std::string serialize_metric_instance(const MetricInstance& inst);
MetricInstance parse_metric_instance(const std::string& text);

// True when the JSON document carries a metric instance (a "matrix" field)
// rather than coordinates.
bool is_metric_instance_text(const std::string& text);

// Grid tiling JSON: {"n": int, "k": int, "sets": k x k array of [u, v]
// pair lists}.
std::string serialize_gridtiling(const GridTilingInstance& gt);
GridTilingInstance parse_gridtiling(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace exclust
