#include <charconv>
#include <sstream>

#include "matchstick/ingest.hpp"

namespace matchstick {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long to_int(std::string_view s, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected an integer id, got '" + std::string(s) + "'");
  }
  return v;
}

double to_real(std::string_view s, std::size_t line) {
  double v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, "expected a finite decimal, got '" + std::string(s) + "'");
  }
  return v;
}

void append_real(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, ptr);
}

}  // namespace

MsgDocument read_msg(std::string_view text) {
  std::vector<Point2> positions;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::vector<std::pair<long long, std::string>> names;
  std::vector<std::size_t> name_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto fields = split_ws(line);
    if (fields.empty() || fields[0].front() == '#') {
      if (eol == text.size()) break;
      continue;
    }
    const std::string_view directive = fields[0];
    if (directive == "v") {
      if (fields.size() != 4) throw ParseError(line_no, "vertex line needs: v <id> <x> <y>");
      const long long id = to_int(fields[1], line_no);
      if (id < static_cast<long long>(positions.size()) && id >= 0) {
        throw ParseError(line_no, "duplicate vertex id " + std::to_string(id));
      }
      if (id != static_cast<long long>(positions.size())) {
        throw ParseError(line_no, "vertex ids must be consecutive from 0; expected " +
                                      std::to_string(positions.size()),
                         ErrorKind::IndexOutOfRange);
      }
      positions.push_back({to_real(fields[2], line_no), to_real(fields[3], line_no)});
    } else if (directive == "e") {
      if (fields.size() != 3) throw ParseError(line_no, "edge line needs: e <id> <id>");
      const long long a = to_int(fields[1], line_no);
      const long long b = to_int(fields[2], line_no);
      if (a < 0 || b < 0 || a > std::numeric_limits<int>::max() || b > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, "edge index out of range", ErrorKind::IndexOutOfRange);
      }
      edges.push_back({static_cast<int>(a), static_cast<int>(b)});
      edge_lines.push_back(line_no);
    } else if (directive == "n") {
      if (fields.size() < 3) throw ParseError(line_no, "name line needs: n <id> <name>");
      const long long id = to_int(fields[1], line_no);
      // The name is the rest of the line after the id.
      const std::size_t at = static_cast<std::size_t>(fields[2].data() - line.data());
      std::string_view name = line.substr(at);
      while (!name.empty() && (name.back() == ' ' || name.back() == '\t' || name.back() == '\r'))
        name.remove_suffix(1);
      names.emplace_back(id, std::string(name));
      name_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(directive) + "'");
    }
    if (eol == text.size()) break;
  }

  const auto n = static_cast<long long>(positions.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].u >= n || edges[k].v >= n) {
      throw ParseError(edge_lines[k],
                       "edge (" + std::to_string(edges[k].u) + ", " + std::to_string(edges[k].v) +
                           ") references a vertex outside [0, " + std::to_string(n) + ")",
                       ErrorKind::IndexOutOfRange);
    }
  }
  MsgDocument doc;
  try {
    doc.graph = Graph(positions.size(), std::move(edges));
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("invalid MSG graph: ") + e.what());
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto [id, name] = names[k];
    if (id < 0 || id >= n) throw ParseError(name_lines[k], "name refers to unknown vertex", ErrorKind::IndexOutOfRange);
    if (!doc.names.emplace(static_cast<int>(id), name).second) {
      throw ParseError(name_lines[k], "vertex " + std::to_string(id) + " named twice");
    }
  }
  doc.embedding = Embedding(std::move(positions));
  return doc;
}

std::string write_msg(const Graph& g, const Embedding& emb, const NameMap& names) {
  check_embedding_shape(g, emb);
  std::string out;
  out.reserve(64 * (g.vertex_count() + g.edge_count()));
  out += "# matchstick graph: " + std::to_string(g.vertex_count()) + " vertices, " +
         std::to_string(g.edge_count()) + " edges\n";
  for (std::size_t i = 0; i < emb.size(); ++i) {
    out += "v ";
    out += std::to_string(i);
    out += ' ';
    append_real(out, emb[i].x);
    out += ' ';
    append_real(out, emb[i].y);
    out += '\n';
  }
  for (const Edge& e : g.edges()) {
    out += "e " + std::to_string(e.u) + ' ' + std::to_string(e.v) + '\n';
  }
  for (const auto& [id, name] : names) {
    if (id < 0 || static_cast<std::size_t>(id) >= g.vertex_count()) {
      throw Error(ErrorKind::IndexOutOfRange, "name refers to unknown vertex " + std::to_string(id));
    }
    out += "n " + std::to_string(id) + ' ' + name + '\n';
  }
  return out;
}

}  // namespace matchstick
