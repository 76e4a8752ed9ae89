#include "tgx/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <vector>

namespace tgx {

namespace {

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg, line);
}

std::int64_t to_int(std::string_view tok, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) syntax(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<std::int64_t> n, L, source, k;
  std::vector<std::pair<Vertex, Weight>> weights;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> snaps;  // indexed by t-1, grown on demand
  std::set<std::pair<Vertex, Vertex>> current_edges;
  std::int64_t current_t = 0;
  std::int64_t max_id = -1;
  bool header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      if (tok.size() != 2 || tok[0] != "tg" || tok[1] != "1") syntax(line_no, "expected header 'tg 1'");
      header = true;
      continue;
    }
    const std::string_view kw = tok[0];
    auto need = [&](std::size_t count) {
      if (tok.size() != count + 1) syntax(line_no, "'" + std::string(kw) + "' takes " + std::to_string(count) + " argument(s)");
    };
    auto scalar = [&](std::optional<std::int64_t>& slot) {
      need(1);
      if (slot) syntax(line_no, "duplicate '" + std::string(kw) + "' line");
      slot = to_int(tok[1], line_no);
    };
    if (kw == "n") {
      scalar(n);
    } else if (kw == "L") {
      scalar(L);
    } else if (kw == "source") {
      scalar(source);
      max_id = std::max(max_id, *source);
    } else if (kw == "k") {
      scalar(k);
    } else if (kw == "w") {
      need(2);
      auto v = to_int(tok[1], line_no);
      auto w = to_int(tok[2], line_no);
      if (v < 0) throw Error(ErrorCode::InvalidVertex, "negative vertex id", line_no);
      if (std::any_of(weights.begin(), weights.end(), [&](const auto& p) { return p.first == v; }))
        syntax(line_no, "duplicate weight for vertex " + std::to_string(v));
      weights.emplace_back(static_cast<Vertex>(v), w);
      max_id = std::max(max_id, v);
    } else if (kw == "t") {
      need(1);
      auto t = to_int(tok[1], line_no);
      if (t <= current_t) syntax(line_no, "snapshot blocks must have strictly increasing steps");
      if (t < 1) throw Error(ErrorCode::TimeStepOutOfRange, "time step must be positive", line_no);
      if (t > 10'000'000) throw Error(ErrorCode::TimeStepOutOfRange, "time step too large", line_no);
      current_t = t;
      current_edges.clear();
      if (snaps.size() < static_cast<std::size_t>(t)) snaps.resize(static_cast<std::size_t>(t));
    } else if (kw == "e") {
      need(2);
      if (current_t == 0) syntax(line_no, "edge before any 't' block");
      auto a = to_int(tok[1], line_no);
      auto b = to_int(tok[2], line_no);
      if (a < 0 || b < 0 || a > INT32_MAX || b > INT32_MAX) throw Error(ErrorCode::InvalidVertex, "vertex id out of range", line_no);
      if (a == b) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(a), line_no);
      const std::pair<Vertex, Vertex> key{static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))};
      if (!current_edges.insert(key).second)
        throw Error(ErrorCode::DuplicateEdgeInSnapshot, "duplicate edge in snapshot " + std::to_string(current_t), line_no);
      snaps[current_t - 1].emplace_back(key);
      max_id = std::max({max_id, a, b});
    } else {
      syntax(line_no, "unknown keyword '" + std::string(kw) + "'");
    }
    if (end == text.size()) break;
  }
  if (!header) syntax(std::max<std::size_t>(line_no, 1), "missing header 'tg 1'");
  if (!source) syntax(line_no, "missing 'source' line");

  const std::int64_t nv = n ? *n : max_id + 1;
  if (nv < 1 || nv > INT32_MAX) throw Error(ErrorCode::InvalidVertex, "vertex count must be positive");
  if (max_id >= nv) throw Error(ErrorCode::InvalidVertex, "vertex id " + std::to_string(max_id) + " exceeds n");
  const std::int64_t lifetime = L ? *L : std::max<std::int64_t>(1, static_cast<std::int64_t>(snaps.size()));
  if (lifetime < 1) throw Error(ErrorCode::InvalidLifetime, "lifetime must be at least 1");
  if (static_cast<std::int64_t>(snaps.size()) > lifetime)
    throw Error(ErrorCode::TimeStepOutOfRange, "snapshot step exceeds L");
  snaps.resize(static_cast<std::size_t>(lifetime));

  std::vector<Weight> w(static_cast<std::size_t>(nv), 1);
  for (auto [v, x] : weights) w[v] = x;
  return build_instance(static_cast<Vertex>(nv), snaps, std::move(w), static_cast<Vertex>(*source), k);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "tg 1\n";
  out << "n " << inst.num_vertices() << "\n";
  out << "L " << inst.lifetime() << "\n";
  out << "source " << inst.source << "\n";
  out << "k " << inst.k << "\n";
  for (Vertex v = 0; v < inst.num_vertices(); ++v)
    if (inst.weights[v] != 1) out << "w " << v << " " << inst.weights[v] << "\n";
  for (Time t = 1; t <= inst.lifetime(); ++t) {
    auto snap = inst.graph.snapshot(t);
    if (snap.empty()) continue;
    out << "t " << t << "\n";
    for (const Edge& e : snap) out << "e " << e.u << " " << e.v << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << content;
}

std::string stats_json(const Stats& s) {
  nlohmann::json j = {{"n", s.n},   {"L", s.L}, {"appearances", s.appearances}, {"underlying_edges", s.underlying_edges},
                      {"p", s.p},   {"q", s.q}, {"gamma", s.gamma}};
  return j.dump();
}

}  // namespace tgx
