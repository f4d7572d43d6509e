#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gprank/graph.hpp"
#include "gprank/pagerank.hpp"

namespace gprank::io {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Graph files for PREFIX:
///   PREFIX.edges.csv  header `src,dst`, one 0-indexed edge per line
///   PREFIX.attrs.csv  header `vertex,in_param,out_param,q,zeta`
///   PREFIX.json       header object; `model_tag` and `n` are always set,
///                     the caller adds seed/config/manifest fields.
void write_graph(const std::filesystem::path& prefix, const DiGraph& graph, nlohmann::json header);

/// Reads the three files written by write_graph. Throws std::runtime_error
/// with the file and line on malformed input.
DiGraph read_graph(const std::filesystem::path& prefix);
nlohmann::json read_graph_header(const std::filesystem::path& prefix);

/// `vertex,rank` CSV.
void write_ranks(const std::filesystem::path& path, std::span<const double> ranks);

/// One value per line, no header.
void write_samples(const std::filesystem::path& path, std::span<const double> values);
/// Reads one number per line; a non-numeric first line is taken as a header.
/// With `column` > 0 reads that comma-separated column instead.
std::vector<double> read_samples(const std::filesystem::path& path, std::size_t column = 0);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);
nlohmann::json read_json(const std::filesystem::path& path);

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const std::string& suffix);

}  // namespace gprank::io
