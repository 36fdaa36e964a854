#pragma once

// LatticeFunction CSV:
//
//   n,x,re,im
//   -3,8,0.25,0
//   ...
//   ,0,1,0        <- optional value at zero
//
// Rows run over consecutive exponents n in ascending order.

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/lattice.hpp"

namespace qharm {

class CsvParseError : public ArgumentError {
 public:
  CsvParseError(int line, const std::string& what)
      : ArgumentError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string format_g17(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, int line, const char* field) {
  if (s.empty()) throw CsvParseError(line, std::string("empty ") + field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw CsvParseError(line, std::string("bad number in ") + field + ": '" + s + "'");
  }
  if (used != s.size()) throw CsvParseError(line, std::string("bad number in ") + field + ": '" + s + "'");
  if (!std::isfinite(v)) throw CsvParseError(line, std::string("non-finite ") + field);
  return v;
}

inline int parse_int(const std::string& s, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw CsvParseError(line, "bad exponent '" + s + "'");
  }
  if (used != s.size()) throw CsvParseError(line, "bad exponent '" + s + "'");
  return v;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const LatticeFunction& f) {
  const QLattice& L = f.lattice();
  os << "n,x,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << L.exponent(i) << ',' << detail::format_g17(L.point_at(i)) << ',' << detail::format_g17(f[i].real())
       << ',' << detail::format_g17(f[i].imag()) << '\n';
  }
  if (const auto& z = f.value_at_zero()) {
    os << ",0," << detail::format_g17(z->real()) << ',' << detail::format_g17(z->imag()) << '\n';
  }
}

inline std::string to_csv(const LatticeFunction& f) {
  std::ostringstream os;
  write_csv(os, f);
  return os.str();
}

/// Reads a LatticeFunction on base q. The window is taken from the rows; each
/// x must equal q^n to 1e-12 relative.
inline LatticeFunction read_csv(std::istream& is, double q) {
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) throw CsvParseError(1, "empty input");
  ++lineno;
  if (detail::split_fields(line) != std::vector<std::string>{"n", "x", "re", "im"}) {
    throw CsvParseError(lineno, "expected header 'n,x,re,im'");
  }
  std::vector<int> ns;
  std::vector<cplx> vals;
  std::optional<cplx> zero;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::split_fields(line) == std::vector<std::string>{""}) continue;
    if (zero) throw CsvParseError(lineno, "rows after the value-at-zero row");
    const auto fields = detail::split_fields(line);
    if (fields.size() != 4) throw CsvParseError(lineno, "expected 4 fields, got " + std::to_string(fields.size()));
    const double x = detail::parse_double(fields[1], lineno, "x");
    const cplx z(detail::parse_double(fields[2], lineno, "re"), detail::parse_double(fields[3], lineno, "im"));
    if (fields[0].empty()) {
      if (x != 0.0) throw CsvParseError(lineno, "value-at-zero row needs x = 0");
      zero = z;
      continue;
    }
    const int n = detail::parse_int(fields[0], lineno);
    if (!ns.empty() && n != ns.back() + 1) throw CsvParseError(lineno, "exponents must be consecutive and ascending");
    const double expect = std::pow(q, n);
    if (std::abs(x - expect) > 1e-12 * expect) {
      throw CsvParseError(lineno, "x = " + fields[1] + " is not q^" + std::to_string(n) + " for the given q");
    }
    ns.push_back(n);
    vals.push_back(z);
  }
  if (ns.empty()) throw CsvParseError(lineno, "no lattice rows");
  return LatticeFunction(QLattice(q, ns.front(), ns.back()), std::move(vals), zero);
}

inline LatticeFunction parse_csv(const std::string& text, double q) {
  std::istringstream is(text);
  return read_csv(is, q);
}

}  // namespace qharm
