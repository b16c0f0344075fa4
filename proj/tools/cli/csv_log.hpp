#pragma once

#include <ostream>
#include <string>

#include "hmrac/simulation.hpp"

namespace hmrac::cli {

/// Header: t,x1..xn,xhat1..xhatn,xrm1..xrmn,u1..um,r,sigma,mode,e_norm,erm_norm,
/// dm_true,dm_hat,du_true_1..,du_hat_1..,w_fro,sdc_resid
std::string csv_header(int n, int m, int m2);

/// One row per record; numbers use 17 significant digits, mode is 0/1.
void write_csv(std::ostream& out, const SimLog& log);
void write_csv_file(const std::string& path, const SimLog& log);

/// %.17g formatting
std::string format_number(double v);

}  // namespace hmrac::cli
