#include "svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hmrac/error.hpp"

namespace hmrac::cli {

namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 230.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kGap = 30.0;

constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// 1-2-5 tick spacing
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    step = f * mag;
    if (span / step <= 6.0) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return out;
}

}  // namespace

std::string render_svg(const Figure& fig) {
  const double height = kTop + static_cast<double>(fig.panels.size()) * (kPanelHeight + kGap) + 30.0;
  const double plot_w = kWidth - kLeft - kRight;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(fig.title)
     << "</text>\n";

  for (std::size_t p = 0; p < fig.panels.size(); ++p) {
    const Panel& panel = fig.panels[p];
    const double top = kTop + static_cast<double>(p) * (kPanelHeight + kGap);
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const Series& s : panel.series) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        xlo = std::min(xlo, s.x[i]);
        xhi = std::max(xhi, s.x[i]);
        ylo = std::min(ylo, s.y[i]);
        yhi = std::max(yhi, s.y[i]);
      }
    }
    if (!std::isfinite(xlo)) {
      xlo = 0.0;
      xhi = 1.0;
      ylo = 0.0;
      yhi = 1.0;
    }
    if (xhi - xlo <= 0.0) xhi = xlo + 1.0;
    if (yhi - ylo <= 1e-300) {
      const double pad = std::max(1.0, std::abs(ylo)) * 0.5;
      ylo -= pad;
      yhi += pad;
    } else {
      const double pad = 0.05 * (yhi - ylo);
      ylo -= pad;
      yhi += pad;
    }
    auto px = [&](double x) { return kLeft + (x - xlo) / (xhi - xlo) * plot_w; };
    auto py = [&](double y) { return top + kPanelHeight - (y - ylo) / (yhi - ylo) * kPanelHeight; };

    os << "<rect x=\"" << kLeft << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << kPanelHeight
       << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (double v : ticks(ylo, yhi)) {
      os << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << py(v) << "\" y2=\"" << py(v)
         << "\" stroke=\"#ddd\"/>\n";
      os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    for (double v : ticks(xlo, xhi)) {
      os << "<text x=\"" << px(v) << "\" y=\"" << top + kPanelHeight + 15 << "\" text-anchor=\"middle\">" << fmt(v)
         << "</text>\n";
    }
    os << "<text transform=\"translate(18," << top + kPanelHeight / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(panel.ylabel) << "</text>\n";

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const Series& s = panel.series[si];
      const char* color = kColors[si % kColors.size()];
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\""
         << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        if (s.step && i > 0) os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i - 1])) << ' ';
        os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
      }
      os << "\"/>\n";
      const double ly = top + 16.0 + 16.0 * static_cast<double>(si);
      os << "<line x1=\"" << kLeft + plot_w + 10 << "\" x2=\"" << kLeft + plot_w + 35 << "\" y1=\"" << ly - 4
         << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\""
         << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
      os << "<text x=\"" << kLeft + plot_w + 40 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
    }
  }
  const double last_bottom = kTop + static_cast<double>(fig.panels.size()) * (kPanelHeight + kGap) - kGap;
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << last_bottom + 32 << "\" text-anchor=\"middle\">"
     << escape(fig.xlabel) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::string& path, const Figure& fig) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Config, "cannot write '" + path + "'");
  out << render_svg(fig);
}

std::vector<std::string> write_run_plots(const std::string& dir, const SimLog& log) {
  std::filesystem::create_directories(dir);
  std::vector<double> t;
  for (const StepRecord& r : log.records) t.push_back(r.t);
  auto collect = [&](auto getter) {
    std::vector<double> out;
    out.reserve(log.records.size());
    for (const StepRecord& r : log.records) out.push_back(getter(r));
    return out;
  };

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const Figure& fig) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    write_svg(path, fig);
    written.push_back(path);
  };

  Figure tracking{"Reference model tracking and mode switch", "t [s]", {}};
  for (int i = 0; i < log.n; ++i) {
    Panel p{"x" + std::to_string(i + 1), {}};
    p.series.push_back({"x" + std::to_string(i + 1), t, collect([i](const StepRecord& r) { return r.x(i); })});
    p.series.push_back({"xrm" + std::to_string(i + 1), t, collect([i](const StepRecord& r) { return r.x_rm(i); }), true});
    tracking.panels.push_back(std::move(p));
  }
  Panel mode{"mode (0 nominal, 1 augmented)", {}};
  mode.series.push_back({"mode", t, collect([](const StepRecord& r) { return r.mode == Mode::Augmented ? 1.0 : 0.0; }),
                         false, true});
  tracking.panels.push_back(std::move(mode));
  emit("tracking.svg", tracking);

  Figure matched{"Uncertainty estimates vs truth", "t [s]", {}};
  for (int i = 0; i < log.m; ++i) {
    Panel p{"matched " + std::to_string(i + 1), {}};
    p.series.push_back({"true", t, collect([i](const StepRecord& r) { return r.dm_true(i); })});
    p.series.push_back({"estimate", t, collect([i](const StepRecord& r) { return r.dm_hat(i); }), true});
    matched.panels.push_back(std::move(p));
  }
  for (int i = 0; i < log.m2; ++i) {
    Panel p{"unmatched " + std::to_string(i + 1), {}};
    p.series.push_back({"true", t, collect([i](const StepRecord& r) { return r.du_true(i); })});
    p.series.push_back({"estimate", t, collect([i](const StepRecord& r) { return r.du_hat(i); }), true});
    matched.panels.push_back(std::move(p));
  }
  emit("matched_uncertainty.svg", matched);

  Figure errors{"Tracking errors", "t [s]", {}};
  errors.panels.push_back({"|x - x_rm|", {{"reference error", t, collect([](const StepRecord& r) { return r.erm_norm; })}}});
  errors.panels.push_back({"|x - x_hat|", {{"observer error", t, collect([](const StepRecord& r) { return r.e_norm; })}}});
  emit("error_norms.svg", errors);

  Figure control{"Control input", "t [s]", {}};
  Panel up{"u", {}};
  for (int i = 0; i < log.m; ++i) {
    up.series.push_back({"u" + std::to_string(i + 1), t, collect([i](const StepRecord& r) { return r.u(i); })});
  }
  control.panels.push_back(std::move(up));
  emit("control.svg", control);

  Figure weights{"RBF network weights", "t [s]", {}};
  if (!log.records.empty()) {
    const Mat& w0 = log.records.front().weights;
    for (Eigen::Index c = 0; c < w0.cols(); ++c) {
      Panel p{"weights -> output " + std::to_string(c + 1), {}};
      for (Eigen::Index r = 0; r < w0.rows(); ++r) {
        p.series.push_back({r == 0 ? std::string("bias") : "c" + std::to_string(r), t,
                            collect([r, c](const StepRecord& rec) { return rec.weights(r, c); })});
      }
      weights.panels.push_back(std::move(p));
    }
  }
  emit("weights.svg", weights);
  return written;
}

}  // namespace hmrac::cli
