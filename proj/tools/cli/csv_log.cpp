#include "csv_log.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hmrac/error.hpp"

namespace hmrac::cli {

namespace {

void append_indexed(std::string& h, const std::string& stem, int count) {
  for (int i = 1; i <= count; ++i) h += "," + stem + std::to_string(i);
}

void append_values(std::string& row, const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) row += "," + format_number(v(i));
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(int n, int m, int m2) {
  std::string h = "t";
  append_indexed(h, "x", n);
  append_indexed(h, "xhat", n);
  append_indexed(h, "xrm", n);
  append_indexed(h, "u", m);
  h += ",r,sigma,mode,e_norm,erm_norm";
  if (m == 1) {
    h += ",dm_true,dm_hat";
  } else {
    append_indexed(h, "dm_true_", m);
    append_indexed(h, "dm_hat_", m);
  }
  append_indexed(h, "du_true_", m2);
  append_indexed(h, "du_hat_", m2);
  h += ",w_fro,sdc_resid";
  return h;
}

void write_csv(std::ostream& out, const SimLog& log) {
  out << csv_header(log.n, log.m, log.m2) << '\n';
  std::string row;
  for (const StepRecord& r : log.records) {
    row = format_number(r.t);
    append_values(row, r.x);
    append_values(row, r.x_hat);
    append_values(row, r.x_rm);
    append_values(row, r.u);
    row += "," + format_number(r.r);
    row += "," + format_number(r.sigma);
    row += r.mode == Mode::Augmented ? ",1" : ",0";
    row += "," + format_number(r.e_norm);
    row += "," + format_number(r.erm_norm);
    append_values(row, r.dm_true);
    append_values(row, r.dm_hat);
    append_values(row, r.du_true);
    append_values(row, r.du_hat);
    row += "," + format_number(r.w_fro);
    row += "," + format_number(r.sdc_resid);
    out << row << '\n';
  }
}

void write_csv_file(const std::string& path, const SimLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Config, "cannot write '" + path + "'");
  write_csv(out, log);
  if (!out) throw Error(ErrorCode::Config, "failed writing '" + path + "'");
}

}  // namespace hmrac::cli
