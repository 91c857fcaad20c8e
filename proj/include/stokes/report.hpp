#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stokes/complex_util.hpp"

namespace stokes {

// One verification row: closed-form expectation vs measurement.
struct CheckRecord {
  std::string name;
  Complex expected{0.0, 0.0};
  Complex measured{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool pass = false;

  static CheckRecord make(std::string name, Complex expected, Complex measured, double tol_rel,
                          double tol_abs_for_zero = 1e-9) {
    CheckRecord r;
    r.name = std::move(name);
    r.expected = expected;
    r.measured = measured;
    r.abs_err = std::abs(measured - expected);
    const double scale = std::abs(expected);
    r.rel_err = scale > 1e-9 ? r.abs_err / scale : r.abs_err;
    r.pass = scale > 1e-9 ? r.rel_err <= tol_rel : r.abs_err <= tol_abs_for_zero;
    return r;
  }

  static CheckRecord bound(std::string name, double value, double threshold) {
    CheckRecord r;
    r.name = std::move(name);
    r.expected = Complex(threshold, 0.0);
    r.measured = Complex(value, 0.0);
    r.abs_err = value;
    r.rel_err = threshold > 0 ? value / threshold : value;
    r.pass = value <= threshold;
    return r;
  }
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_complex(Complex v) {
  return fmt17(v.real()) + (v.imag() < 0 ? "-" : "+") + fmt17(std::abs(v.imag())) + "i";
}

}  // namespace detail

inline nlohmann::json record_to_json(const CheckRecord& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["expected"] = {r.expected.real(), r.expected.imag()};
  j["measured"] = {r.measured.real(), r.measured.imag()};
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["pass"] = r.pass;
  return j;
}

inline void write_csv(const std::string& path, const std::vector<CheckRecord>& rows) {
  std::ofstream out(path);
  out << "name,expected,measured,abs_err,rel_err,pass\n";
  for (const CheckRecord& r : rows) {
    out << r.name << ',' << detail::fmt_complex(r.expected) << ','
        << detail::fmt_complex(r.measured) << ',' << detail::fmt17(r.abs_err) << ','
        << detail::fmt17(r.rel_err) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace stokes
