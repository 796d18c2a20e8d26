#include "aqsp/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string_view>

#include "aqsp/generators.hpp"

namespace aqsp {

namespace {

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start) words.emplace_back(text.substr(start, pos - start));
  }
  return words;
}

template <class T>
T parse_number(std::string_view word, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(word) + "'");
  }
  return value;
}

std::string join(const std::vector<std::string>& words, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < words.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

struct Registry {
  std::mutex mutex;
  std::map<std::string, QuadFactory> factories;
};

Registry& registry() {
  static Registry* reg = [] {
    auto* r = new Registry;
    r->factories["zero"] = [](const std::vector<std::string>& args, NodeId) -> QuadFunction {
      if (!args.empty()) throw std::invalid_argument("tag 'zero' takes no arguments");
      return [](NodeId, NodeId, NodeId) { return Cost{0}; };
    };
    r->factories["grid_turn"] = [](const std::vector<std::string>& args, NodeId node_count) -> QuadFunction {
      if (args.size() != 4) throw std::invalid_argument("tag 'grid_turn' expects: rows cols weight wrap");
      GridShape shape;
      shape.rows = parse_number<std::size_t>(args[0], "rows");
      shape.cols = parse_number<std::size_t>(args[1], "cols");
      const double weight = parse_number<double>(args[2], "weight");
      shape.wrap = parse_number<int>(args[3], "wrap flag") != 0;
      if (shape.rows * shape.cols != node_count) {
        throw std::invalid_argument("grid_turn shape does not match the node count");
      }
      return turn_penalty_gamma(shape, weight);
    };
    r->factories["scaled"] = [](const std::vector<std::string>& args, NodeId node_count) -> QuadFunction {
      if (args.size() < 2) throw std::invalid_argument("tag 'scaled' expects: lambda <inner tag>");
      const double lambda = parse_number<double>(args[0], "lambda");
      if (!(lambda >= 0.0)) throw std::invalid_argument("scaled lambda must be >= 0");
      auto inner = resolve_quad_tag(join(args, 1), node_count);
      return [inner = std::move(inner), lambda](NodeId i, NodeId j, NodeId k) { return lambda * inner(i, j, k); };
    };
    return r;
  }();
  return *reg;
}

}  // namespace

std::string format_cost(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void register_quad_function(const std::string& name, QuadFactory factory) {
  Registry& reg = registry();
  std::lock_guard lock(reg.mutex);
  reg.factories[name] = std::move(factory);
}

QuadFunction resolve_quad_tag(const std::string& tag, NodeId node_count) {
  const auto words = split_words(tag);
  if (words.empty()) throw std::invalid_argument("empty functional tag");
  QuadFactory factory;
  {
    Registry& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.factories.find(words[0]);
    if (it == reg.factories.end()) throw std::invalid_argument("unknown functional tag '" + words[0] + "'");
    factory = it->second;
  }
  return factory(std::vector<std::string>(words.begin() + 1, words.end()), node_count);
}

QuadGraph read_aqg(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++line_no;
      auto words = split_words(line);
      if (!words.empty()) return words;
    }
    throw ParseError(line_no + 1, "unexpected end of file");
  };

  auto magic = next_line();
  if (magic.size() != 2 || magic[0] != "AQG" || magic[1] != "1") throw ParseError(line_no, "expected header 'AQG 1'");

  auto header = next_line();
  if (header.size() < 6 || header[0] != "nodes" || header[2] != "arcs" || header[4] != "quad") {
    throw ParseError(line_no, "expected 'nodes N arcs M quad K' or 'nodes N arcs M quad FUNC <tag>'");
  }
  NodeId node_count = 0;
  std::size_t arc_count = 0;
  std::size_t quad_count = 0;
  std::string tag;
  const bool functional = header[5] == "FUNC";
  try {
    node_count = parse_number<NodeId>(header[1], "node count");
    arc_count = parse_number<std::size_t>(header[3], "arc count");
    if (functional) {
      tag = join(header, 6);
      if (tag.empty()) throw std::invalid_argument("missing functional tag");
    } else {
      if (header.size() != 6) throw std::invalid_argument("trailing tokens after quad count");
      quad_count = parse_number<std::size_t>(header[5], "quad count");
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }

  std::vector<ArcSpec> arcs;
  arcs.reserve(arc_count);
  for (std::size_t a = 0; a < arc_count; ++a) {
    auto words = next_line();
    if (words.size() != 3) throw ParseError(line_no, "expected 'tail head cost'");
    try {
      arcs.push_back({parse_number<NodeId>(words[0], "tail"), parse_number<NodeId>(words[1], "head"),
                      parse_number<double>(words[2], "cost")});
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }

  StoredQuad stored;
  stored.triples.reserve(quad_count);
  for (std::size_t q = 0; q < quad_count; ++q) {
    auto words = next_line();
    if (words.size() != 4) throw ParseError(line_no, "expected 'i j k cost'");
    try {
      stored.triples.push_back({parse_number<NodeId>(words[0], "node"), parse_number<NodeId>(words[1], "node"),
                                parse_number<NodeId>(words[2], "node"), parse_number<double>(words[3], "cost")});
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_words(line).empty()) throw ParseError(line_no, "unexpected content after the last record");
  }

  if (functional) {
    QuadFunction gamma;
    try {
      gamma = resolve_quad_tag(tag, node_count);
    } catch (const std::invalid_argument& e) {
      throw ParseError(2, e.what());
    }
    return QuadGraph::build(node_count, arcs, FunctionalQuad{std::move(gamma), tag});
  }
  return QuadGraph::build(node_count, arcs, std::move(stored));
}

QuadGraph read_aqg_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return read_aqg(in);
}

void write_aqg(std::ostream& out, const QuadGraph& g) {
  if (g.is_functional() && g.functional_tag().empty()) {
    throw std::invalid_argument("functional quadratic model has no registered tag; materialize it first");
  }
  std::string buf;
  buf.reserve(64 * static_cast<std::size_t>(g.arc_count()) + 64);
  buf += "AQG 1\n";
  buf += "nodes " + std::to_string(g.node_count()) + " arcs " + std::to_string(g.arc_count()) + " quad ";
  std::vector<QuadTriple> triples;
  if (g.is_functional()) {
    buf += "FUNC " + g.functional_tag() + "\n";
  } else {
    triples = g.stored_triples();
    buf += std::to_string(triples.size()) + "\n";
  }
  char num[64];
  auto append_cost = [&](double v) {
    auto res = std::to_chars(num, num + sizeof(num), v);
    buf.append(num, res.ptr);
  };
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    buf += std::to_string(g.tail(a));
    buf += ' ';
    buf += std::to_string(g.head(a));
    buf += ' ';
    append_cost(g.cost(a));
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  for (const QuadTriple& q : triples) {
    buf += std::to_string(q.i);
    buf += ' ';
    buf += std::to_string(q.j);
    buf += ' ';
    buf += std::to_string(q.k);
    buf += ' ';
    append_cost(q.cost);
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  if (!out) throw std::runtime_error("failed writing graph");
}

void write_aqg_file(const std::filesystem::path& path, const QuadGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_aqg(out, g);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace aqsp
