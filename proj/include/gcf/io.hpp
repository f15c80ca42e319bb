#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gcf/conv_scheme.hpp"
#include "gcf/downscale.hpp"
#include "gcf/graph.hpp"
#include "gcf/proxy.hpp"
#include "gcf/signal.hpp"
#include "gcf/translations.hpp"

namespace gcf::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw InputError("write failed: " + path);
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

// Runs `f` and turns JSON access errors into InputError.
template <typename F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump() + "\n"; }

// ---- graph --------------------------------------------------------------

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 0) throw InputError("graph: negative vertex count");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("graph: every edge must be a pair [u, v]");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return Graph::from_edges(static_cast<std::size_t>(n), edges);
  });
}

inline Graph load_graph(const std::string& path) { return graph_from_json(parse_json(read_file(path), path)); }
inline void save_graph(const std::string& path, const Graph& g) { write_file(path, dump(to_json(g))); }

// ---- proxy family ---------------------------------------------------------

inline json to_json(const ProxyFamily& f) {
  return {{"kappa", f.kappa}, {"v0", f.v0}, {"psi", f.psi}, {"cost", f.cost}};
}

inline ProxyFamily family_from_json(const json& j) {
  return guarded("proxy family", [&] {
    ProxyFamily f;
    f.kappa = j.at("kappa").get<std::size_t>();
    f.v0 = j.at("v0").get<Vertex>();
    f.psi = j.at("psi").get<std::vector<std::vector<Vertex>>>();
    f.cost = j.at("cost").get<std::vector<Cost>>();
    if (f.psi.size() != f.kappa) throw InputError("proxy family: psi has " + std::to_string(f.psi.size()) + " rows, kappa is " + std::to_string(f.kappa));
    const std::size_t n = f.cost.size();
    if (f.v0 < 0 || static_cast<std::size_t>(f.v0) >= n) throw InputError("proxy family: seed out of range");
    for (const auto& row : f.psi) {
      if (row.size() != n) throw InputError("proxy family: psi row length differs from cost length");
      for (Vertex t : row)
        if (t < kBottom || t >= static_cast<Vertex>(n)) throw InputError("proxy family: psi entry " + std::to_string(t) + " out of range");
    }
    return f;
  });
}

inline ProxyFamily load_family(const std::string& path) { return family_from_json(parse_json(read_file(path), path)); }
inline void save_family(const std::string& path, const ProxyFamily& f) { write_file(path, dump(to_json(f))); }

// ---- conv scheme ----------------------------------------------------------

inline json to_json(const ConvScheme& s) {
  return {{"kappa", s.kappa},
          {"out", s.out},
          {"index", s.index},
          {"meta", {{"v0", s.v0}, {"level", s.level}, {"n_in", s.n_in}}}};
}

inline ConvScheme scheme_from_json(const json& j) {
  ConvScheme s = guarded("scheme", [&] {
    ConvScheme s;
    s.kappa = j.at("kappa").get<std::size_t>();
    s.out = j.at("out").get<VertexSet>();
    s.index = j.at("index").get<std::vector<std::vector<Vertex>>>();
    const json& meta = j.at("meta");
    s.v0 = meta.at("v0").get<Vertex>();
    s.level = meta.at("level").get<int>();
    s.n_in = meta.at("n_in").get<std::size_t>();
    return s;
  });
  s.validate();
  return s;
}

namespace detail {

inline void put_u32(std::string& out, std::uint32_t x) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xFFu));
}

inline std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t x = 0;
  for (int b = 0; b < 4; ++b) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + b])) << (8 * b);
  return x;
}

inline void require_size(std::string_view data, std::size_t need, const char* what) {
  if (data.size() < need) throw InputError(std::string(what) + ": file truncated");
}

}  // namespace detail

/// GSCH: magic, u32 rows, u32 kappa, rows * kappa little-endian i32 (-1 = undefined).
inline std::string scheme_to_binary(const ConvScheme& s) {
  std::string out = "GSCH";
  detail::put_u32(out, static_cast<std::uint32_t>(s.rows()));
  detail::put_u32(out, static_cast<std::uint32_t>(s.kappa));
  for (const auto& row : s.index)
    for (Vertex t : row) detail::put_u32(out, static_cast<std::uint32_t>(t));
  return out;
}

/// The binary form carries only the index matrix: rows become outputs
/// 0..rows-1 and n_in is taken as one past the largest referenced input.
inline ConvScheme scheme_from_binary(std::string_view data) {
  detail::require_size(data, 12, "GSCH");
  if (data.substr(0, 4) != "GSCH") throw InputError("not a GSCH file");
  const std::size_t rows = detail::get_u32(data, 4), kappa = detail::get_u32(data, 8);
  detail::require_size(data, 12 + rows * kappa * 4, "GSCH");
  ConvScheme s;
  s.kappa = kappa;
  std::size_t at = 12;
  for (std::size_t i = 0; i < rows; ++i) {
    s.out.push_back(static_cast<Vertex>(i));
    std::vector<Vertex> row(kappa);
    for (auto& t : row) {
      t = static_cast<Vertex>(detail::get_u32(data, at));
      at += 4;
      if (t < kBottom) throw InputError("GSCH: negative index other than -1");
      s.n_in = std::max(s.n_in, static_cast<std::size_t>(t + 1));
    }
    s.index.push_back(std::move(row));
  }
  return s;
}

inline ConvScheme load_scheme(const std::string& path) {
  std::string data = read_file(path);
  if (data.rfind("GSCH", 0) == 0) return scheme_from_binary(data);
  return scheme_from_json(parse_json(data, path));
}

inline void save_scheme(const std::string& path, const ConvScheme& s) {
  const bool binary = path.size() >= 5 && path.substr(path.size() - 5) == ".gsch";
  write_file(path, binary ? scheme_to_binary(s) : dump(to_json(s)));
}

// ---- layer parameters ------------------------------------------------------

inline json to_json(const ConvLayerParams& p) {
  return {{"weights", p.weights},
          {"bias", p.bias},
          {"activation", p.activation == Activation::kRelu ? "relu" : "identity"}};
}

inline ConvLayerParams layer_from_json(const json& j) {
  return guarded("layer", [&] {
    ConvLayerParams p;
    p.weights = j.at("weights").get<std::vector<double>>();
    p.bias = j.value("bias", 0.0);
    const auto act = j.value("activation", std::string("identity"));
    if (act == "relu") p.activation = Activation::kRelu;
    else if (act != "identity") throw InputError("layer: activation must be identity or relu, got '" + act + "'");
    for (double w : p.weights)
      if (!std::isfinite(w)) throw InputError("layer: weights must be finite");
    if (!std::isfinite(p.bias)) throw InputError("layer: bias must be finite");
    return p;
  });
}

inline ConvLayerParams load_layer(const std::string& path) { return layer_from_json(parse_json(read_file(path), path)); }
inline void save_layer(const std::string& path, const ConvLayerParams& p) { write_file(path, dump(to_json(p))); }

// ---- downscale plan -------------------------------------------------------

inline json to_json(const DownscalePlan& p) {
  return {{"r", p.r},         {"seed", p.seed},         {"level", p.level},   {"n", p.n_parent},
          {"kept", p.kept},   {"induced", p.induced},   {"origin", p.origin}, {"uncovered", p.uncovered}};
}

inline DownscalePlan plan_from_json(const json& j) {
  return guarded("downscale plan", [&] {
    DownscalePlan p;
    p.r = j.at("r").get<std::size_t>();
    p.seed = j.at("seed").get<Vertex>();
    p.kept = j.at("kept").get<VertexSet>();
    p.induced = j.at("induced").get<std::vector<std::vector<Vertex>>>();
    p.level = j.value("level", 1);
    p.n_parent = j.value("n", std::size_t{0});
    p.origin = j.contains("origin") ? j.at("origin").get<VertexSet>() : p.kept;
    p.uncovered = j.value("uncovered", VertexSet{});
    if (!std::is_sorted(p.kept.begin(), p.kept.end())) throw InputError("downscale plan: kept must be ascending");
    if (p.origin.size() != p.kept.size()) throw InputError("downscale plan: origin and kept differ in length");
    if (p.position(p.seed) == kBottom) throw InputError("downscale plan: seed is not a kept vertex");
    for (const auto& row : p.induced) {
      if (row.size() != p.kept.size()) throw InputError("downscale plan: induced row length differs from kept");
      for (Vertex t : row)
        if (t != kBottom && p.position(t) == kBottom) throw InputError("downscale plan: induced target " + std::to_string(t) + " is not kept");
    }
    return p;
  });
}

inline DownscalePlan load_plan(const std::string& path) { return plan_from_json(parse_json(read_file(path), path)); }
inline void save_plan(const std::string& path, const DownscalePlan& p) { write_file(path, dump(to_json(p))); }

// ---- local translation dump ----------------------------------------------

inline json to_json(const std::vector<LocalTranslationSet>& locals) {
  json out = json::array();
  for (const auto& l : locals) {
    json maps = json::array();
    for (std::size_t i = 0; i < l.maps.size(); ++i) {
      VertexSet domain, image;
      for (Vertex v : l.context.to_original) {
        Vertex t = l.image_of(i, v);
        if (t == kBottom) continue;
        domain.push_back(v);
        image.push_back(t);
      }
      maps.push_back({{"domain", domain}, {"image", image}, {"loss", l.maps[i].loss()}});
    }
    out.push_back({{"center", l.center}, {"context", l.context.to_original}, {"maps", std::move(maps)}});
  }
  return out;
}

// ---- signals ----------------------------------------------------------------

inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

inline SignalMatrix signals_from_csv(std::string_view text) {
  SignalMatrix s;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::size_t cols = 0;
    while (true) {
      auto comma = line.find(',');
      std::string_view cell = line.substr(0, comma);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      double x = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw InputError("CSV line " + std::to_string(line_no) + ": cannot parse '" + std::string(cell) + "'");
      }
      s.values.push_back(x);
      ++cols;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (s.m == 0) s.n = cols;
    if (cols != s.n) {
      throw InputError("CSV line " + std::to_string(line_no) + " has " + std::to_string(cols) + " columns, expected " +
                       std::to_string(s.n));
    }
    ++s.m;
  }
  return s;
}

inline std::string signals_to_csv(const SignalMatrix& s) {
  std::string out;
  for (std::size_t i = 0; i < s.m; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      if (j) out.push_back(',');
      out += format_double(s.at(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

/// GSIG: magic, u32 m, u32 n, m * n little-endian float32, row-major.
inline std::string signals_to_binary(const SignalMatrix& s) {
  std::string out = "GSIG";
  detail::put_u32(out, static_cast<std::uint32_t>(s.m));
  detail::put_u32(out, static_cast<std::uint32_t>(s.n));
  for (double x : s.values) detail::put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
  return out;
}

inline SignalMatrix signals_from_binary(std::string_view data) {
  detail::require_size(data, 12, "GSIG");
  if (data.substr(0, 4) != "GSIG") throw InputError("not a GSIG file");
  SignalMatrix s(detail::get_u32(data, 4), detail::get_u32(data, 8));
  detail::require_size(data, 12 + s.values.size() * 4, "GSIG");
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    s.values[k] = std::bit_cast<float>(detail::get_u32(data, 12 + 4 * k));
  }
  return s;
}

inline SignalMatrix load_signals(const std::string& path) {
  std::string data = read_file(path);
  SignalMatrix s = data.rfind("GSIG", 0) == 0 ? signals_from_binary(data) : signals_from_csv(data);
  s.validate();
  return s;
}

/// Binary when the path ends in .gsig, CSV otherwise.
inline void save_signals(const std::string& path, const SignalMatrix& s) {
  const bool binary = path.size() >= 5 && path.substr(path.size() - 5) == ".gsig";
  write_file(path, binary ? signals_to_binary(s) : signals_to_csv(s));
}

}  // namespace gcf::io
