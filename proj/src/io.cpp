#include "rotavg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "rotavg/so3.hpp"

namespace rotavg {

namespace {

// 17 significant digits round-trip any double exactly through decimal text.
std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

struct LineReader {
  std::ifstream in;
  int line_no = 0;

  explicit LineReader(const std::filesystem::path& path) : in(path) {
    if (!in) {
      throw std::runtime_error("cannot open for reading: " + path.string());
    }
  }

  // next content line, skipping blanks and '#' comments; false at EOF
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '#') continue;
      return true;
    }
    return false;
  }
};

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

int parse_int(const std::string& token, int line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected integer, got '" + token + "'", line);
  }
  return value;
}

double parse_double(const std::string& token, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected number, got '" + token + "'", line);
  }
  return value;
}

Mat3 parse_block(const std::vector<std::string>& tokens, std::size_t offset, int line) {
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      m(r, c) = parse_double(tokens[offset + 3 * r + c], line);
    }
  }
  if (!is_rotation(m, tol::kIoRotation, tol::kIoRotation)) {
    throw ParseError("3x3 block is not a rotation within tolerance", line);
  }
  return m;
}

void write_block(std::ofstream& out, const Mat3& m) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out << ' ' << fmt(m(r, c));
    }
  }
}

}  // namespace

void write_graph(const std::filesystem::path& path, const RAGraph& g) {
  std::ofstream out = open_out(path);
  out << "RAG 1 " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.i << ' ' << e.j;
    write_block(out, e.rel);
    out << '\n';
  }
}

RAGraph read_graph(const std::filesystem::path& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) {
    throw ParseError("missing RAG header", reader.line_no);
  }
  const auto header = tokenize(line);
  if (header.size() != 4 || header[0] != "RAG" || header[1] != "1") {
    throw ParseError("expected header 'RAG 1 <n> <m>'", reader.line_no);
  }
  const int n = parse_int(header[2], reader.line_no);
  const int m = parse_int(header[3], reader.line_no);
  if (n < 1 || m < 0) {
    throw ParseError("invalid vertex or edge count", reader.line_no);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  std::unordered_set<std::int64_t> seen;
  seen.reserve(m);
  for (int k = 0; k < m; ++k) {
    if (!reader.next(line)) {
      throw ParseError("expected " + std::to_string(m) + " edges, file ended after " +
                           std::to_string(k),
                       reader.line_no);
    }
    const auto tokens = tokenize(line);
    if (tokens.size() != 11) {
      throw ParseError("expected '<i> <j>' and 9 matrix entries", reader.line_no);
    }
    Edge e;
    e.i = parse_int(tokens[0], reader.line_no);
    e.j = parse_int(tokens[1], reader.line_no);
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw ParseError("vertex index out of range", reader.line_no);
    }
    if (e.i == e.j) {
      throw ParseError("self-loop edge", reader.line_no);
    }
    const std::int64_t lo = std::min(e.i, e.j);
    const std::int64_t hi = std::max(e.i, e.j);
    if (!seen.insert(lo * n + hi).second) {
      throw ParseError("duplicate measurement for a vertex pair", reader.line_no);
    }
    e.rel = parse_block(tokens, 2, reader.line_no);
    edges.push_back(std::move(e));
  }
  if (reader.next(line)) {
    throw ParseError("unexpected content after the declared edges", reader.line_no);
  }
  try {
    return RAGraph(n, std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what(), 0);
  }
}

void write_solution(const std::filesystem::path& path, const RotationStack& rotations) {
  std::ofstream out = open_out(path);
  out << "RAS 1 " << rotations.size() << '\n';
  for (const Mat3& r : rotations) {
    std::string line;
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) {
        if (!line.empty()) line += ' ';
        line += fmt(r(row, col));
      }
    }
    out << line << '\n';
  }
}

RotationStack read_solution(const std::filesystem::path& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) {
    throw ParseError("missing RAS header", reader.line_no);
  }
  const auto header = tokenize(line);
  if (header.size() != 3 || header[0] != "RAS" || header[1] != "1") {
    throw ParseError("expected header 'RAS 1 <n>'", reader.line_no);
  }
  const int n = parse_int(header[2], reader.line_no);
  if (n < 1) {
    throw ParseError("invalid rotation count", reader.line_no);
  }
  RotationStack rotations;
  rotations.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (!reader.next(line)) {
      throw ParseError("expected " + std::to_string(n) + " rotations, file ended after " +
                           std::to_string(k),
                       reader.line_no);
    }
    const auto tokens = tokenize(line);
    if (tokens.size() != 9) {
      throw ParseError("expected 9 matrix entries", reader.line_no);
    }
    rotations.push_back(parse_block(tokens, 0, reader.line_no));
  }
  if (reader.next(line)) {
    throw ParseError("unexpected content after the declared rotations", reader.line_no);
  }
  return rotations;
}

void write_trace(const std::filesystem::path& path, const ConvergenceTrace& trace) {
  std::ofstream out = open_out(path);
  out << "iter,objective,residual,time_s\n";
  for (const IterationRecord& rec : trace.iterations) {
    out << rec.iter << ',' << fmt(rec.objective) << ',' << fmt(rec.residual) << ','
        << fmt(rec.time_s) << '\n';
  }
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json doc{
      {"n", report.n},
      {"num_edges", report.num_edges},
      {"algorithm", report.algorithm},
      {"avg_error", report.avg_error},
      {"objective", report.objective},
      {"iterations", report.iterations},
      {"converged", report.converged},
      {"time_s", report.time_s},
      {"min_eig", report.min_eig},
      {"asymmetry", report.asymmetry},
      {"seed", report.seed},
      {"config", report.config},
  };
  if (report.mu.has_value()) {
    doc["mu"] = *report.mu;
  }
  return doc;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace rotavg
