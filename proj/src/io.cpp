#include "qsd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qsd {

namespace {

// Token reader skipping whitespace and '#' comments.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string tok;
    while (in_ >> tok) {
      if (tok[0] == '#') {
        in_.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        continue;
      }
      return tok;
    }
    fail(ErrorCode::parse_error, "unexpected end of ensemble file");
  }

  void expect(const std::string& keyword) {
    std::string tok = next();
    if (tok != keyword)
      fail(ErrorCode::parse_error,
           "expected '" + keyword + "', found '" + tok + "'");
  }

  double number() {
    std::string tok = next();
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v))
        fail(ErrorCode::parse_error, "bad number '" + tok + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(ErrorCode::parse_error, "bad number '" + tok + "'");
    }
  }

  long integer(long lo, long hi, const char* what) {
    double v = number();
    long n = static_cast<long>(v);
    if (v != static_cast<double>(n) || n < lo || n > hi)
      fail(ErrorCode::parse_error, std::string("bad value for ") + what);
    return n;
  }

 private:
  std::istream& in_;
};

}  // namespace

Ensemble read_ensemble(std::istream& in) {
  TokenReader tok(in);
  tok.expect("dim");
  long d = tok.integer(1, 4096, "dim");
  tok.expect("n");
  long n = tok.integer(1, 4096, "n");
  std::vector<double> priors;
  std::vector<DensityMatrix> states;
  for (long k = 0; k < n; ++k) {
    tok.expect("prior");
    priors.push_back(tok.number());
    ComplexMatrix m(d, d);
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) {
        double re = tok.number();
        double im = tok.number();
        m(r, c) = Complex(re, im);
      }
    double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff()))
      fail(ErrorCode::invalid_matrix,
           "state " + std::to_string(k) + " is not Hermitian");
    states.emplace_back(HermitianMatrix(m));
  }
  return Ensemble(std::move(priors), std::move(states));
}

Ensemble read_ensemble_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  return read_ensemble(in);
}

void write_ensemble(std::ostream& out, const Ensemble& e) {
  out << "dim " << e.dim() << "\n";
  out << "n " << e.size() << "\n";
  for (int i = 0; i < e.size(); ++i) {
    out << "prior " << format_double(e.prior(i)) << "\n";
    const ComplexMatrix& m = e.state(i).mat();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out << "  ";
        out << format_double(m(r, c).real()) << " "
            << format_double(m(r, c).imag());
      }
      out << "\n";
    }
  }
}

void write_ensemble_file(const std::string& path, const Ensemble& e) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  write_ensemble(out, e);
  if (!out) fail(ErrorCode::io_error, "failed writing '" + path + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qsd
