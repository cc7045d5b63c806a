#include "wavecert/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace wavecert::io {

ParseError::ParseError(std::filesystem::path p, long ln, const std::string& what)
    : std::runtime_error(p.string() + ":" + std::to_string(ln) + ": " + what),
      path(std::move(p)),
      line(ln) {}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational parse_rational_or_throw(const std::filesystem::path& path, long line,
                                 const std::string& tok) {
  const auto r = Rational::parse(tok);
  if (!r)
    throw ParseError(path, line, "expected a rational number (num/den or integer), got '" +
                                     tok + "'");
  return *r;
}

// Whitespace-separated tokens; tok_line is the line the last token started on.
struct TokenStream {
  const std::filesystem::path& path;
  std::istringstream in;
  long line = 1;
  long tok_line = 1;

  explicit TokenStream(const std::filesystem::path& p, const std::string& text)
      : path(p), in(text) {}

  std::optional<std::string> next() {
    std::string tok;
    char ch;
    while (in.get(ch)) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (ch == '\n') ++line;
        continue;
      }
      tok += ch;
      break;
    }
    if (tok.empty()) return std::nullopt;
    tok_line = line;
    while (in.get(ch)) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (ch == '\n') ++line;
        break;
      }
      tok += ch;
    }
    return tok;
  }

  std::string expect(const char* what) {
    auto t = next();
    if (!t) throw ParseError(path, line, std::string("unexpected end of file, expected ") + what);
    return *t;
  }
};

long parse_long(const std::filesystem::path& path, long line, const std::string& tok) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(path, line, "expected an integer, got '" + tok + "'");
  }
}

RationalMatrix read_rectangular(const std::filesystem::path& path, long rows, long cols,
                                TokenStream& ts) {
  RationalMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      const std::string tok = ts.expect("a rational entry");
      m(i, j) = parse_rational_or_throw(path, ts.tok_line, tok);
    }
  return m;
}

}  // namespace

CoeffGrid read_grid(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  TokenStream ts(path, text);
  const std::string mt = ts.expect("row count M");
  const long M = parse_long(path, ts.tok_line, mt);
  const std::string nt = ts.expect("column count N");
  const long N = parse_long(path, ts.tok_line, nt);
  if (M < 1 || N < 1) throw ParseError(path, 1, "grid dimensions must be >= 1");
  return CoeffGrid(read_rectangular(path, M, N, ts));
}

void write_grid(const std::filesystem::path& path, const CoeffGrid& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << g.modes_m() << " " << g.modes_n() << "\n";
  for (long m = 0; m < g.modes_m(); ++m) {
    for (long n = 0; n < g.modes_n(); ++n) out << (n ? " " : "") << g.c(m, n).str();
    out << "\n";
  }
}

RationalMatrix read_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  TokenStream ts(path, text);
  const std::string dt = ts.expect("dimension");
  const long dim = parse_long(path, ts.tok_line, dt);
  if (dim < 1) throw ParseError(path, 1, "matrix dimension must be >= 1");
  return read_rectangular(path, dim, dim, ts);
}

void write_matrix(const std::filesystem::path& path, const RationalMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << m.rows() << "\n";
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).str();
    out << "\n";
  }
}

// --- nested-brace ingest --------------------------------------------------------

namespace {

struct BraceLexer {
  const std::filesystem::path& path;
  const std::string& text;
  std::size_t pos = 0;
  long line = 1;

  BraceLexer(const std::filesystem::path& p, const std::string& t) : path(p), text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      if (text[pos] == '\n') ++line;
      ++pos;
    }
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) throw ParseError(path, line, "unexpected end of file");
    return text[pos];
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char take() {
    const char c = peek();
    ++pos;
    return c;
  }
  std::string number_token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size()) {
      const char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '/' ||
          c == '.' || c == 'e' || c == 'E' || c == '*' || c == '^')
        ++pos;
      else
        break;
    }
    if (pos == start) throw ParseError(path, line, "expected a number");
    return text.substr(start, pos - start);
  }
};

RationalMatrix parse_nested(const std::filesystem::path& path, const std::string& text) {
  BraceLexer lx(path, text);
  // optional "name =" prefix
  lx.skip_ws();
  if (lx.pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[lx.pos])) ||
                               text[lx.pos] == '_')) {
    while (lx.pos < text.size() && text[lx.pos] != '=' && text[lx.pos] != '{') {
      if (text[lx.pos] == '\n') ++lx.line;
      ++lx.pos;
    }
    if (lx.pos < text.size() && text[lx.pos] == '=') ++lx.pos;
  }
  if (lx.take() != '{') throw ParseError(path, lx.line, "expected '{' to open the nested list");
  std::vector<std::vector<Rational>> rows;
  for (;;) {
    if (lx.take() != '{') throw ParseError(path, lx.line, "expected '{' to open a row");
    std::vector<Rational> row;
    for (;;) {
      const long ln = lx.line;
      const std::string tok = lx.number_token();
      const auto r = Rational::parse(tok);
      if (!r)
        throw ParseError(path, ln,
                         "non-rational token '" + tok +
                             "' (floating-point literals are rejected in rigorous inputs)");
      row.push_back(*r);
      const char c = lx.take();
      if (c == ',') continue;
      if (c == '}') break;
      throw ParseError(path, lx.line, std::string("expected ',' or '}', got '") + c + "'");
    }
    rows.push_back(std::move(row));
    const char c = lx.take();
    if (c == ',') continue;
    if (c == '}') break;
    throw ParseError(path, lx.line, std::string("expected ',' or '}', got '") + c + "'");
  }
  // optional trailing ';'
  if (!lx.at_end() && lx.peek() == ';') lx.take();
  if (!lx.at_end()) throw ParseError(path, lx.line, "trailing content after the nested list");

  if (rows.empty() || rows[0].empty()) throw ParseError(path, 1, "empty nested list");
  const std::size_t cols = rows[0].size();
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != cols)
      throw ParseError(path, 1,
                       "ragged rows: row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(cols));
  RationalMatrix m(static_cast<long>(rows.size()), static_cast<long>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<long>(i), static_cast<long>(j)) =
        std::move(rows[i][j]);
  return m;
}

bool looks_nested(const std::string& text) {
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return true;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') return false;
    // a name prefix like "u0hat = {..." still means nested
    return true;
  }
  return false;
}

}  // namespace

RationalMatrix ingest_nested_list(const std::filesystem::path& path) {
  return parse_nested(path, read_file(path));
}

CoeffGrid ingest_nested_grid(const std::filesystem::path& path) {
  return CoeffGrid(ingest_nested_list(path));
}

AcalMatrix ingest_nested_acal(const std::filesystem::path& path) {
  RationalMatrix m = ingest_nested_list(path);
  if (m.rows() != m.cols())
    throw ParseError(path, 1, "Acal nested list must be square");
  RationalMatrix t = m.transpose();
  return AcalMatrix(std::move(t));
}

CoeffGrid read_grid_auto(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (looks_nested(text)) return CoeffGrid(parse_nested(path, text));
  TokenStream ts(path, text);
  const std::string mt = ts.expect("row count M");
  const long M = parse_long(path, ts.tok_line, mt);
  const std::string nt = ts.expect("column count N");
  const long N = parse_long(path, ts.tok_line, nt);
  if (M < 1 || N < 1) throw ParseError(path, 1, "grid dimensions must be >= 1");
  return CoeffGrid(read_rectangular(path, M, N, ts));
}

AcalMatrix read_acal_auto(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (looks_nested(text)) {
    RationalMatrix m = parse_nested(path, text);
    if (m.rows() != m.cols()) throw ParseError(path, 1, "Acal nested list must be square");
    RationalMatrix t = m.transpose();
    return AcalMatrix(std::move(t));
  }
  return AcalMatrix(read_matrix(path));
}

// --- manifest ------------------------------------------------------------------------

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  const auto dir = path.parent_path();
  std::map<std::string, std::string> kv;
  std::string linetext;
  long ln = 0;
  while (std::getline(in, linetext)) {
    ++ln;
    const auto hash = linetext.find('#');
    if (hash != std::string::npos) linetext.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(linetext).empty()) continue;
    const auto eq = linetext.find('=');
    if (eq == std::string::npos) throw ParseError(path, ln, "expected 'key = value'");
    const std::string key = trim(linetext.substr(0, eq));
    const std::string val = trim(linetext.substr(eq + 1));
    if (key.empty() || val.empty()) throw ParseError(path, ln, "expected 'key = value'");
    if (!kv.emplace(key, val).second) throw ParseError(path, ln, "duplicate key '" + key + "'");
  }
  auto need = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError(path, 0, std::string("missing required key '") + key + "'");
    return it->second;
  };
  auto rational_of = [&](const std::string& key, const std::string& val) {
    const auto r = Rational::parse(val);
    if (!r) throw ParseError(path, 0, "key '" + key + "': bad rational '" + val + "'");
    return *r;
  };

  Manifest man;
  man.freq = Frequency::from_rational_text(need("omega"));
  man.u0 = read_grid_auto(dir / need("u0"));
  man.acal = read_acal_auto(dir / need("acal"));
  Rational rt = Rational(0), rx = Rational(0);
  NormWeights w = NormWeights::defaults();
  if (kv.count("rho_tau")) rt = rational_of("rho_tau", kv["rho_tau"]);
  if (kv.count("rho_x")) rx = rational_of("rho_x", kv["rho_x"]);
  if (!rt.is_zero() || !rx.is_zero()) {
    if (rt.is_zero()) rt = w.rho_tau;
    if (rx.is_zero()) rx = w.rho_x;
    w = NormWeights(rt, rx);
  }
  man.weights = w;
  if (kv.count("mu")) man.mu = parse_long(path, 0, kv["mu"]);
  if (kv.count("mtilde")) man.mtilde = parse_long(path, 0, kv["mtilde"]);
  if (kv.count("k0")) man.k0 = rational_of("k0", kv["k0"]);
  if (kv.count("delta")) man.delta = rational_of("delta", kv["delta"]);
  if (kv.count("epsilon")) man.epsilon = rational_of("epsilon", kv["epsilon"]);
  if (kv.count("label")) man.label = kv["label"];
  return man;
}

void write_manifest(const std::filesystem::path& path, const Certificate& cert,
                    const std::filesystem::path& u0_path,
                    const std::filesystem::path& acal_path,
                    const std::optional<Rational>& epsilon) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "omega = " << cert.freq.omega().str() << "\n";
  out << "u0 = " << u0_path.string() << "\n";
  out << "acal = " << acal_path.string() << "\n";
  out << "mu = " << cert.trunc.mu << "\n";
  out << "mtilde = " << cert.trunc.Mtilde << "\n";
  out << "k0 = " << cert.k0.str() << "\n";
  out << "delta = " << cert.delta.str() << "\n";
  out << "rho_tau = " << cert.weights.rho_tau.str() << "\n";
  out << "rho_x = " << cert.weights.rho_x.str() << "\n";
  if (epsilon) out << "epsilon = " << epsilon->str() << "\n";
  if (!cert.label.empty()) out << "label = " << cert.label << "\n";
}

Certificate manifest_to_certificate(const Manifest& man, const Rational& k0,
                                    const Rational& delta, const std::string& label) {
  TruncationSpec t;
  t.M = man.u0.modes_m();
  t.N = man.u0.modes_n();
  const long mu_from_acal = man.acal.mu();
  t.mu = t.nu = man.mu.value_or(mu_from_acal);
  if (t.mu != mu_from_acal)
    throw std::invalid_argument("manifest: mu does not match the Acal dimension");
  if (man.mtilde) {
    t.Mtilde = t.Ntilde = *man.mtilde;
  } else {
    t.Mtilde = t.Ntilde = select_mtilde_minimal(man.u0, man.freq, man.weights, t.mu, t.nu);
  }
  Certificate cert{man.freq, man.u0,  man.acal, t,
                   man.weights, k0, delta, label.empty() ? man.label : label};
  cert.validate();
  return cert;
}

// --- report log -------------------------------------------------------------------------

void ReportLog::section(const std::string& title) { sink_ << "\n## " << title << "\n"; }
void ReportLog::kv(const std::string& key, const std::string& value) {
  sink_ << key << " = " << value << "\n";
}
void ReportLog::kv(const std::string& key, long value) { sink_ << key << " = " << value << "\n"; }
void ReportLog::kv(const std::string& key, bool value) {
  sink_ << key << " = " << (value ? "true" : "false") << "\n";
}
void ReportLog::kv(const std::string& key, const Rational& value, int significant) {
  sink_ << key << " = " << value.str() << "\n";
  sink_ << key << "_decimal = " << value.decimal(significant) << "  # non-normative\n";
}

void log_report(ReportLog& log, const BoundReport& r) {
  log.section("bounds");
  log.kv("norm_u0", r.norm_u0);
  log.kv("bound_A", r.bound_A);
  log.kv("bound_H0", r.bound_H0);
  log.kv("norm_N0", r.norm_N0);
  log.kv("bound_Linv", r.bound_Linv);
  log.kv("phi00", r.phi00);
  log.section("h0 detail");
  log.kv("tail_constant_C", r.tail_constant);
  log.kv("tail_term_m", r.tail_m);
  log.kv("tail_term_n", r.tail_n);
  log.kv("worst_inner_column", r.worst_inner.j);
  log.kv("worst_inner_value", r.worst_inner.value);
  log.kv("worst_outer_column", r.worst_outer.j);
  log.kv("worst_outer_value", r.worst_outer.value);
  log.section("truncations");
  log.kv("M", r.trunc.M);
  log.kv("N", r.trunc.N);
  log.kv("mu", r.trunc.mu);
  log.kv("nu", r.trunc.nu);
  log.kv("mtilde", r.trunc.Mtilde);
  log.kv("ntilde", r.trunc.Ntilde);
}

void log_outcome(ReportLog& log, const VerificationOutcome& o, const Rational& k0,
                 const Rational& delta) {
  log.section("certificate");
  log.kv("k0", k0);
  log.kv("delta", delta);
  log.kv("lhs_contraction", o.lhs_contraction);
  log.kv("n0_threshold", o.n0_threshold);
  log.kv("epsilon", o.epsilon, 6);
  log.kv("accepted", o.accepted);
  if (!o.accepted) log.kv("failure_reason", o.failure_reason);
}

}  // namespace wavecert::io
