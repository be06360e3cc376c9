#pragma once

/**
 * @file io.hpp
 * @brief Line-oriented text formats for every input type, with canonical emitters.
 *
 * Parse errors carry `source:line:` prefixes. Comment lines start with '#';
 * in linking-matrix files `# role i K|a|b|c id` lines are read as annotations.
 */

#include <string>
#include <string_view>

#include "rtinv/abelian_gauss.hpp"
#include "rtinv/cocycle.hpp"
#include "rtinv/graph.hpp"
#include "rtinv/graph_partition.hpp"
#include "rtinv/modular_data.hpp"
#include "rtinv/surgery.hpp"

namespace rtinv::io {

enum class FileKind { modular_data, graph, linking_matrix, weight_matrix, metric_group, cocycle, group, unknown };

const char* kind_name(FileKind k);
/// Decided by the first keyword(s) of the text.
FileKind detect_kind(std::string_view text);

std::string read_file(const std::string& path);

ModularData parse_modular_data(std::string_view text, std::string_view source = "<input>");
std::string emit_modular_data(const ModularData& md);

Graph parse_graph(std::string_view text, std::string_view source = "<input>");
std::string emit_graph(const Graph& g);

SurgeryPresentation parse_linking_matrix(std::string_view text, std::string_view source = "<input>");
std::string emit_linking_matrix(const SurgeryPresentation& sp);

/// `weights k`, optional `conductor n`, then `A i j <cycnum>` per nonzero entry.
WeightMatrix parse_weight_matrix(std::string_view text, std::string_view source = "<input>");
std::string emit_weight_matrix(const WeightMatrix& a);

MetricGroup parse_metric_group(std::string_view text, std::string_view source = "<input>");
std::string emit_metric_group(const MetricGroup& mg);

Cocycle parse_cocycle(std::string_view text, std::string_view source = "<input>");
std::string emit_cocycle(const Cocycle& c);

/// The `orders` line of a group, metric-group or cocycle file.
FinAbGroup parse_group(std::string_view text, std::string_view source = "<input>");
std::string emit_group(const FinAbGroup& g);

/// Element written as comma-separated coordinates.
int64_t parse_element(const FinAbGroup& g, std::string_view text);
std::string element_coords(const FinAbGroup& g, int64_t x);

}  // namespace rtinv::io
