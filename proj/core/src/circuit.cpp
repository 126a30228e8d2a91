#include "flosim/circuit.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"

namespace flosim {

bool Circuit::full_output() const {
  for (int b : output)
    if (b == kUnmeasured) return false;
  return true;
}

int Circuit::measured_count() const {
  int n = 0;
  for (int b : output) n += b != kUnmeasured ? 1 : 0;
  return n;
}

int Circuit::cphase_count() const {
  int n = 0;
  for (const auto& g : gates) n += std::holds_alternative<ControlledPhase>(g) ? 1 : 0;
  return n;
}

namespace {

struct GateEq {
  bool operator()(const Matchgate& a, const Matchgate& b) const { return a.q == b.q && a.A == b.A && a.B == b.B; }
  bool operator()(const Elementary& a, const Elementary& b) const { return a.mu == b.mu && a.j == b.j && a.k == b.k; }
  bool operator()(const PassiveGen& a, const PassiveGen& b) const { return a.beta == b.beta; }
  bool operator()(const GeneralGen& a, const GeneralGen& b) const { return a.alpha == b.alpha; }
  bool operator()(const ControlledPhase& a, const ControlledPhase& b) const { return a.theta == b.theta && a.q == b.q; }
  template <class X, class Y>
  bool operator()(const X&, const Y&) const { return false; }
};

}  // namespace

bool operator==(const Circuit& a, const Circuit& b) {
  if (a.n != b.n || a.input != b.input || a.output != b.output || a.gates.size() != b.gates.size()) return false;
  for (std::size_t i = 0; i < a.gates.size(); ++i)
    if (!std::visit(GateEq{}, a.gates[i], b.gates[i])) return false;
  return true;
}

Eigen::Matrix4cd matchgate_matrix(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B) {
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  g(0, 0) = A(0, 0);
  g(0, 3) = A(0, 1);
  g(3, 0) = A(1, 0);
  g(3, 3) = A(1, 1);
  g(1, 1) = B(0, 0);
  g(1, 2) = B(0, 1);
  g(2, 1) = B(1, 0);
  g(2, 2) = B(1, 1);
  return g;
}

void validate_matchgate(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  if ((A.adjoint() * A - id).cwiseAbs().maxCoeff() > 1e-9) throw NotMatchgateError("A block is not unitary");
  if ((B.adjoint() * B - id).cwiseAbs().maxCoeff() > 1e-9) throw NotMatchgateError("B block is not unitary");
  if (std::abs(A.determinant() - B.determinant()) > 1e-9) throw NotMatchgateError("det A differs from det B");
}

GeneratorWithPhase matchgate_to_generator(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B) {
  validate_matchgate(A, B);
  CMat g = matchgate_matrix(A, B);

  // Rotation R_jk = tr(G^dag c_j G c_k) / 4, then its principal generator.
  std::vector<CMat> c(4, CMat(4, 4));
  for (int j = 0; j < 4; ++j)
    for (int col = 0; col < 4; ++col) {
      CVec e = CVec::Zero(4);
      e(col) = 1.0;
      c[j].col(col) = dense_majorana(2, j, e);
    }
  Mat r(4, 4);
  double imag = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      cplx v = (g.adjoint() * c[j] * g * c[k]).trace() / 4.0;
      r(j, k) = v.real();
      imag = std::max(imag, std::abs(v.imag()));
    }
  GeneratorWithPhase out;
  try {
    if (imag > 1e-9) throw ShapeError("complex rotation");
    out.alpha = so_log(r);
  } catch (const ShapeError&) {
    throw NotMatchgateError("gate does not conjugate Majoranas into Majoranas");
  }
  CMat u = dense_flo_unitary(2, out.alpha);
  out.phase = (u.adjoint() * g).trace() / 4.0;
  double res = (g - out.phase * u).cwiseAbs().maxCoeff();
  if (res > 1e-9 || std::abs(std::abs(out.phase) - 1.0) > 1e-9)
    throw NotMatchgateError("gate is not a phase times an FLO unitary (residual " + std::to_string(res) + ")");
  out.phase /= std::abs(out.phase);
  return out;
}

Mat read_matrix_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open matrix file " + file.string());
  long d = -1;
  if (!(in >> d) || d <= 0) throw ShapeError("matrix file " + file.string() + " lacks a positive dimension");
  Mat m(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      if (!(in >> m(i, j))) throw ShapeError("matrix file " + file.string() + " is truncated");
  std::string extra;
  if (in >> extra) throw ShapeError("matrix file " + file.string() + " has trailing data");
  return m;
}

void write_matrix_file(const std::filesystem::path& file, const Mat& m) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write matrix file " + file.string());
  char buf[64];
  out << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
}

namespace {

struct Token {
  std::string_view text;
  int column;
};

class Parser {
 public:
  Parser(std::string_view text, std::filesystem::path base) : text_(text), base_(std::move(base)) {}

  Circuit run() {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      line_ = line_no;
      handle(text_.substr(pos, end - pos));
      pos = end + 1;
    }
    line_ = line_no;
    if (c_.n == 0) fail<SyntaxError>(0, "missing 'qubits' directive");
    if (!have_output_) fail<SyntaxError>(0, "missing 'output' directive");
    if (!have_input_) c_.input.assign(c_.n, 0);
    return std::move(c_);
  }

 private:
  template <class E>
  [[noreturn]] void fail(int column, const std::string& msg) const {
    throw E("line " + std::to_string(line_) + ", column " + std::to_string(column) + ": " + msg, line_, column);
  }

  void handle(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> tok;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > s) tok.push_back({line.substr(s, i - s), static_cast<int>(s) + 1});
    }
    if (tok.empty()) return;
    const auto& d = tok[0].text;
    if (d != "qubits" && c_.n == 0) fail<SyntaxError>(tok[0].column, "'qubits' must come first");
    if (d == "qubits") {
      arity(tok, 2);
      if (c_.n != 0) fail<SyntaxError>(tok[0].column, "duplicate 'qubits'");
      c_.n = integer(tok[1]);
      if (c_.n < 1 || c_.n > 4096) fail<DimensionError>(tok[1].column, "qubit count out of range");
    } else if (d == "input") {
      arity(tok, 2);
      if (have_input_) fail<SyntaxError>(tok[0].column, "duplicate 'input'");
      c_.input = bits(tok[1], false);
      have_input_ = true;
    } else if (d == "output") {
      arity(tok, 2);
      if (have_output_) fail<SyntaxError>(tok[0].column, "duplicate 'output'");
      c_.output = bits(tok[1], true);
      have_output_ = true;
    } else if (d == "mg") {
      arity(tok, 18);
      Matchgate g;
      g.q = integer(tok[1]);
      if (g.q < 0 || g.q + 1 >= c_.n) fail<IndexError>(tok[1].column, "matchgate qubit out of range");
      for (int e = 0; e < 8; ++e) {
        cplx v(real(tok[2 + 2 * e]), real(tok[3 + 2 * e]));
        (e < 4 ? g.A : g.B)((e % 4) / 2, e % 2) = v;
      }
      try {
        validate_matchgate(g.A, g.B);
      } catch (const NotMatchgateError& err) {
        fail<NotMatchgateError>(tok[2].column, err.what());
      }
      c_.gates.emplace_back(g);
    } else if (d == "elem") {
      arity(tok, 4);
      Elementary g{real(tok[1]), integer(tok[2]), integer(tok[3])};
      for (int t : {2, 3}) {
        int v = t == 2 ? g.j : g.k;
        if (v < 0 || v >= 2 * c_.n) fail<IndexError>(tok[t].column, "Majorana index out of range");
      }
      if (g.j == g.k) fail<IndexError>(tok[3].column, "elementary gate needs distinct Majorana indices");
      c_.gates.emplace_back(g);
    } else if (d == "passive" || d == "general") {
      arity(tok, 2);
      std::string file(tok[1].text);
      Mat m;
      try {
        std::filesystem::path p(file);
        m = read_matrix_file(p.is_absolute() || base_.empty() ? p : base_ / p);
        if (m.rows() != 2 * c_.n) throw DimensionError("generator dimension must be 2 * qubits");
        m = checked_antisym(m);
        if (d == "passive" && !commutes_with_omega(m, tol_sym(m.rows())))
          throw NotPassiveError("generator does not commute with Omega");
      } catch (const Error& err) {
        throw_error(err.code(), "line " + std::to_string(line_) + ", column " + std::to_string(tok[1].column) + ": " + err.what(),
                    line_, tok[1].column);
      }
      if (d == "passive")
        c_.gates.emplace_back(PassiveGen{m, file});
      else
        c_.gates.emplace_back(GeneralGen{m, file});
    } else if (d == "cphase") {
      arity(tok, 3);
      ControlledPhase g{real(tok[1]), integer(tok[2])};
      if (g.q < 0 || g.q + 1 >= c_.n) fail<IndexError>(tok[2].column, "controlled-phase qubit out of range");
      c_.gates.emplace_back(g);
    } else {
      fail<SyntaxError>(tok[0].column, "unknown directive '" + std::string(d) + "'");
    }
  }

  void arity(const std::vector<Token>& tok, std::size_t want) const {
    if (tok.size() != want)
      fail<SyntaxError>(tok.size() > want ? tok[want].column : tok.back().column + static_cast<int>(tok.back().text.size()),
                        "'" + std::string(tok[0].text) + "' expects " + std::to_string(want - 1) + " argument(s)");
  }

  int integer(const Token& t) const {
    int v = 0;
    auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (r.ec != std::errc() || r.ptr != t.text.data() + t.text.size()) fail<SyntaxError>(t.column, "expected an integer");
    return v;
  }

  double real(const Token& t) const {
    double v = 0;
    const char* b = t.text.data();
    if (*b == '+') ++b;
    auto r = std::from_chars(b, t.text.data() + t.text.size(), v);
    if (r.ec != std::errc() || r.ptr != t.text.data() + t.text.size() || !std::isfinite(v))
      fail<SyntaxError>(t.column, "expected a real number");
    return v;
  }

  std::vector<int> bits(const Token& t, bool allow_mask) const {
    if (static_cast<int>(t.text.size()) != c_.n) fail<DimensionError>(t.column, "bitstring length differs from qubit count");
    std::vector<int> out;
    int ones = 0;
    for (std::size_t i = 0; i < t.text.size(); ++i) {
      char ch = t.text[i];
      if (ch == '0' || ch == '1') {
        out.push_back(ch - '0');
        ones += ch - '0';
      } else if (ch == '-' && allow_mask) {
        out.push_back(kUnmeasured);
      } else {
        fail<SyntaxError>(t.column + static_cast<int>(i), "bad character in bitstring");
      }
    }
    if (ones % 2 != 0) fail<ParityError>(t.column, "bitstring has odd parity");
    return out;
  }

  std::string_view text_;
  std::filesystem::path base_;
  Circuit c_;
  int line_ = 0;
  bool have_input_ = false;
  bool have_output_ = false;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string bitstring(const std::vector<int>& b) {
  std::string s;
  for (int v : b) s += v == kUnmeasured ? '-' : static_cast<char>('0' + v);
  return s;
}

}  // namespace

Circuit parse_circuit(std::string_view text, const std::filesystem::path& base_dir) {
  return Parser(text, base_dir).run();
}

Circuit load_circuit(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open circuit file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str(), file.parent_path());
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.n << "\n";
  out << "input " << bitstring(c.input) << "\n";
  for (const auto& g : c.gates) {
    if (auto* mg = std::get_if<Matchgate>(&g)) {
      out << "mg " << mg->q;
      for (const auto* blk : {&mg->A, &mg->B})
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) out << " " << fmt17((*blk)(r, s).real()) << " " << fmt17((*blk)(r, s).imag());
      out << "\n";
    } else if (auto* el = std::get_if<Elementary>(&g)) {
      out << "elem " << fmt17(el->mu) << " " << el->j << " " << el->k << "\n";
    } else if (auto* pg = std::get_if<PassiveGen>(&g)) {
      out << "passive " << pg->file << "\n";
    } else if (auto* gg = std::get_if<GeneralGen>(&g)) {
      out << "general " << gg->file << "\n";
    } else if (auto* cp = std::get_if<ControlledPhase>(&g)) {
      out << "cphase " << fmt17(cp->theta) << " " << cp->q << "\n";
    }
  }
  out << "output " << bitstring(c.output) << "\n";
  return out.str();
}

void save_circuit(Circuit& c, const std::filesystem::path& file) {
  const auto dir = file.parent_path();
  const auto stem = file.stem().string();
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    auto sidecar = [&](std::string& name, const Mat& m) {
      if (!name.empty()) return;
      name = stem + ".g" + std::to_string(i) + ".mat";
      write_matrix_file(dir / name, m);
    };
    if (auto* pg = std::get_if<PassiveGen>(&c.gates[i])) sidecar(pg->file, pg->beta);
    if (auto* gg = std::get_if<GeneralGen>(&c.gates[i])) sidecar(gg->file, gg->alpha);
  }
  std::ofstream out(file);
  if (!out) throw IoError("cannot write circuit file " + file.string());
  out << print_circuit(c);
}

}  // namespace flosim
