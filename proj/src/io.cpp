#include "gprank/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace gprank::io {

std::string format_double(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return {buf, end};
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const std::string& suffix) {
    return std::filesystem::path(prefix.string() + suffix);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

void write_graph(const std::filesystem::path& prefix, const DiGraph& graph, nlohmann::json header) {
    {
        auto out = open_out(with_suffix(prefix, ".edges.csv"));
        out << "src,dst\n";
        for (const Edge& e : graph.edges()) out << e.src << ',' << e.dst << '\n';
    }
    {
        auto out = open_out(with_suffix(prefix, ".attrs.csv"));
        out << "vertex,in_param,out_param,q,zeta\n";
        const auto& attrs = graph.attributes();
        for (std::size_t v = 0; v < attrs.size(); ++v) {
            out << v << ',' << format_double(attrs[v].in_param) << ',' << format_double(attrs[v].out_param) << ','
                << format_double(attrs[v].q) << ',' << format_double(attrs[v].zeta) << '\n';
        }
    }
    header["model_tag"] = std::string(to_string(graph.model_tag()));
    header["n"] = graph.size();
    header["edges"] = graph.edge_count();
    write_json(with_suffix(prefix, ".json"), header);
}

nlohmann::json read_graph_header(const std::filesystem::path& prefix) { return read_json(with_suffix(prefix, ".json")); }

DiGraph read_graph(const std::filesystem::path& prefix) {
    const nlohmann::json header = read_graph_header(prefix);
    if (!header.contains("n") || !header.contains("model_tag")) {
        throw std::runtime_error(with_suffix(prefix, ".json").string() + ": header needs `n` and `model_tag`");
    }
    const auto n = header.at("n").get<std::size_t>();
    const ModelTag tag = model_tag_from_string(header.at("model_tag").get<std::string>());

    std::vector<VertexAttributes> attrs(n);
    {
        const auto path = with_suffix(prefix, ".attrs.csv");
        auto in = open_in(path);
        std::string line;
        std::size_t lineno = 0;
        std::vector<bool> seen(n, false);
        while (std::getline(in, line)) {
            ++lineno;
            if (lineno == 1 || line.empty()) continue;
            const auto f = split_csv(line);
            std::size_t v = 0;
            VertexAttributes a;
            if (f.size() != 5 || !parse_number(f[0], v) || !parse_number(f[1], a.in_param) ||
                !parse_number(f[2], a.out_param) || !parse_number(f[3], a.q) || !parse_number(f[4], a.zeta)) {
                malformed(path, lineno, "expected vertex,in_param,out_param,q,zeta");
            }
            if (v >= n) malformed(path, lineno, "vertex index out of range");
            attrs[v] = a;
            seen[v] = true;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v]) malformed(path, lineno, "missing attributes for vertex " + std::to_string(v));
        }
    }
    std::vector<Edge> edges;
    {
        const auto path = with_suffix(prefix, ".edges.csv");
        auto in = open_in(path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (lineno == 1 || line.empty()) continue;
            const auto f = split_csv(line);
            Edge e{};
            if (f.size() != 2 || !parse_number(f[0], e.src) || !parse_number(f[1], e.dst)) {
                malformed(path, lineno, "expected src,dst");
            }
            if (e.src >= n || e.dst >= n) malformed(path, lineno, "edge endpoint out of range");
            edges.push_back(e);
        }
    }
    return DiGraph(n, edges, std::move(attrs), tag);
}

void write_ranks(const std::filesystem::path& path, std::span<const double> ranks) {
    auto out = open_out(path);
    out << "vertex,rank\n";
    for (std::size_t v = 0; v < ranks.size(); ++v) out << v << ',' << format_double(ranks[v]) << '\n';
}

void write_samples(const std::filesystem::path& path, std::span<const double> values) {
    auto out = open_out(path);
    for (double x : values) out << format_double(x) << '\n';
}

std::vector<double> read_samples(const std::filesystem::path& path, std::size_t column) {
    auto in = open_in(path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (column >= fields.size()) malformed(path, lineno, "missing column " + std::to_string(column));
        double x = 0.0;
        if (!parse_number(fields[column], x)) {
            if (lineno == 1) continue;  // header
            malformed(path, lineno, "not a number");
        }
        values.push_back(x);
    }
    return values;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
    auto out = open_out(path);
    out << value.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

}  // namespace gprank::io
