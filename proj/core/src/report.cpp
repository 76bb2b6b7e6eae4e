#include "zaremba/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zaremba {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json to_json(const Extrapolation& ex) {
  return {{"lambda_inf", ex.lambda_inf},
          {"observed_order", ex.observed_order},
          {"error_estimate", ex.error_estimate},
          {"flagged", ex.flagged}};
}

ordered_json to_json(const std::vector<LevelResult>& levels) {
  ordered_json arr = ordered_json::array();
  for (const LevelResult& l : levels) {
    arr.push_back({{"h", l.h}, {"lambda", l.lambda}, {"n_dofs", l.n_dofs},
                   {"residual", l.residual}});
  }
  return arr;
}

ordered_json to_json(const SideResult& side) {
  return {{"arc_ids", side.arc_ids},
          {"levels", to_json(side.levels)},
          {"extrapolation", to_json(side.extrapolation)}};
}

ordered_json to_json(const HypothesisReport& hyp) {
  ordered_json violations = ordered_json::array();
  for (const MonotonicityViolation& v : hyp.condition_3_1.violations) {
    violations.push_back(
        {{"kind", v.kind == ViolationKind::CornerUpJump ? "corner-up-jump" : "interior-increase"},
         {"index", v.index},
         {"position", v.position},
         {"magnitude", v.magnitude}});
  }
  return {{"classification", to_string(hyp.classification)},
          {"complementary", hyp.complementary},
          {"gamma_connected", hyp.gamma_connected},
          {"angle_check",
           {{"angle_at_p0", hyp.angle_check.angle_at_p0},
            {"angle_at_pn", hyp.angle_check.angle_at_pn},
            {"pass", hyp.angle_check.pass},
            {"margin", hyp.angle_check.margin}}},
          {"condition_3_1",
           {{"pass", hyp.condition_3_1.pass},
            {"fd_agreement", hyp.condition_3_1.fd_agreement},
            {"violations", violations}}}};
}

ordered_json comparison_json(const ComparisonReport& report) {
  return {{"schema", 1},
          {"name", report.name},
          {"kind", "compare"},
          {"timestamp", iso_timestamp()},
          {"hypothesis", to_json(report.hypothesis)},
          {"gamma", to_json(report.gamma)},
          {"gamma_prime", to_json(report.gamma_prime)},
          {"margin", report.margin},
          {"combined_error", report.combined_error},
          {"symmetric_pair", report.symmetric_pair},
          {"verdict", to_string(report.verdict)}};
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
               ? c
               : '_';
  }
  return out.empty() ? "report" : out;
}

std::string write_file(const std::string& out_dir, const std::string& filename,
                       const std::string& content) {
  std::filesystem::create_directories(out_dir);
  const std::string path = (std::filesystem::path(out_dir) / filename).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
  return path;
}

// Minimal SVG line-plot writer with linear axes.
class SvgPlot {
 public:
  SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi, std::string title)
      : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {
    pad_range(x_lo_, x_hi_);
    pad_range(y_lo_, y_hi_);
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
          << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    body_ << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    body_ << "<text x=\"" << kW / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\" "
          << "font-family=\"sans-serif\">" << title << "</text>\n";
    body_ << "<rect x=\"" << kMargin << "\" y=\"" << kTop << "\" width=\"" << kW - kMargin - 20
          << "\" height=\"" << kH - kTop - kBottom
          << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    axis_labels();
  }

  double px(double x) const {
    return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (kW - kMargin - 20);
  }
  double py(double y) const {
    return kH - kBottom - (y - y_lo_) / (y_hi_ - y_lo_) * (kH - kTop - kBottom);
  }

  void polyline(const std::vector<Point2>& pts, const std::string& color, bool dashed = false) {
    if (pts.empty()) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dashed) body_ << " stroke-dasharray=\"6 4\"";
    body_ << " points=\"";
    for (const Point2& p : pts) body_ << num(px(p.x)) << "," << num(py(p.y)) << " ";
    body_ << "\"/>\n";
  }

  void circle(Point2 p, const std::string& fill, const std::string& stroke) {
    body_ << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
          << "\" r=\"3.5\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void vline(double x, const std::string& color) {
    body_ << "<line x1=\"" << num(px(x)) << "\" y1=\"" << kTop << "\" x2=\"" << num(px(x))
          << "\" y2=\"" << kH - kBottom << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"3 3\"/>\n";
  }

  void hline(double y, const std::string& color) {
    body_ << "<line x1=\"" << kMargin << "\" y1=\"" << num(py(y)) << "\" x2=\"" << kW - 20
          << "\" y2=\"" << num(py(y)) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"3 3\"/>\n";
  }

  void label(Point2 p, const std::string& text, const std::string& color) {
    body_ << "<text x=\"" << num(px(p.x) + 5) << "\" y=\"" << num(py(p.y) - 5)
          << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << color << "\">" << text
          << "</text>\n";
  }

  std::string finish() {
    body_ << "</svg>\n";
    return body_.str();
  }

 private:
  static constexpr int kW = 640, kH = 420, kMargin = 70, kTop = 34, kBottom = 40;

  static void pad_range(double& lo, double& hi) {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.06 * (hi - lo);
    lo -= pad;
    hi += pad;
  }

  void axis_labels() {
    for (int k = 0; k <= 4; ++k) {
      const double x = x_lo_ + (x_hi_ - x_lo_) * k / 4;
      const double y = y_lo_ + (y_hi_ - y_lo_) * k / 4;
      body_ << "<text x=\"" << num(px(x)) << "\" y=\"" << kH - kBottom + 16
            << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">" << num(x)
            << "</text>\n";
      body_ << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(py(y) + 3)
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << num(y)
            << "</text>\n";
    }
  }

  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::ostringstream body_;
};

}  // namespace

std::string to_json_text(const ComparisonReport& report) {
  return comparison_json(report).dump(2) + "\n";
}

std::string to_json_text(const InclusionReport& report) {
  ordered_json levels = ordered_json::array();
  for (const InclusionLevel& l : report.levels) {
    levels.push_back({{"h", l.h},
                      {"lambda_sub", l.lambda_sub},
                      {"lambda_full", l.lambda_full},
                      {"monotone", l.monotone}});
  }
  ordered_json j = {{"schema", 1},
                    {"name", report.name},
                    {"kind", "inclusion"},
                    {"timestamp", iso_timestamp()},
                    {"gamma", report.gamma},
                    {"gamma_sub", report.gamma_sub},
                    {"proper_subset", report.proper_subset},
                    {"levels", levels},
                    {"extrapolation_full", to_json(report.ex_full)},
                    {"extrapolation_sub", to_json(report.ex_sub)},
                    {"margin", report.margin},
                    {"combined_error", report.combined_error},
                    {"all_levels_monotone", report.all_levels_monotone},
                    {"verdict", to_string(report.verdict)}};
  return j.dump(2) + "\n";
}

std::string to_json_text(const SolveReport& report) {
  ordered_json j = {{"schema", 1},
                    {"name", report.name},
                    {"kind", "solve"},
                    {"timestamp", iso_timestamp()},
                    {"dirichlet_arcs", report.dirichlet_arcs},
                    {"levels", to_json(report.levels)},
                    {"extrapolation", to_json(report.extrapolation)}};
  return j.dump(2) + "\n";
}

std::string to_json_text(const IdentityReport& report) {
  ordered_json membership = ordered_json::array();
  for (const ArcMembership& m : report.membership) {
    membership.push_back({{"arc_id", m.arc_id},
                          {"label", m.label == BCLabel::Dirichlet ? "dirichlet" : "neumann"},
                          {"max_violation", m.max_violation},
                          {"pass", m.pass}});
  }
  ordered_json j = {{"schema", 1},
                    {"name", report.name},
                    {"kind", "identity"},
                    {"timestamp", iso_timestamp()},
                    {"quad_order", report.quad_order},
                    {"derivative_consistency", report.derivative_consistency},
                    {"membership", membership},
                    {"breakdown",
                     {{"term_mixed", report.breakdown.term_mixed},
                      {"term_cross", report.breakdown.term_cross},
                      {"term_curv", report.breakdown.term_curv},
                      {"residual", report.breakdown.residual}}}};
  return j.dump(2) + "\n";
}

std::string hypothesis_json_text(const HypothesisReport& report, const std::string& name) {
  ordered_json j = {{"schema", 1},
                    {"name", name},
                    {"kind", "check"},
                    {"timestamp", iso_timestamp()},
                    {"hypothesis", to_json(report)}};
  return j.dump(2) + "\n";
}

std::string sweep_json_text(const std::vector<SweepPoint>& points, const std::string& name) {
  ordered_json arr = ordered_json::array();
  for (const SweepPoint& p : points) {
    ordered_json entry = {{"index", p.index}, {"value", p.value}, {"status", p.status}};
    if (p.report) entry["report"] = comparison_json(*p.report);
    arr.push_back(entry);
  }
  ordered_json j = {{"schema", 1},
                    {"name", name},
                    {"kind", "sweep"},
                    {"timestamp", iso_timestamp()},
                    {"points", arr}};
  return j.dump(2) + "\n";
}

std::string sweep_csv_text(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "index,value,name,status,classification,condition_3_1,angle_pass,"
         "lambda_gamma,err_gamma,lambda_gamma_prime,err_gamma_prime,margin,"
         "combined_error,verdict\r\n";
  for (const SweepPoint& p : points) {
    out << p.index << ',' << num(p.value) << ',';
    if (p.report) {
      const ComparisonReport& r = *p.report;
      out << csv_quote(r.name) << ',' << csv_quote(p.status) << ','
          << to_string(r.hypothesis.classification) << ','
          << (r.hypothesis.condition_3_1.pass ? "pass" : "fail") << ','
          << (r.hypothesis.angle_check.pass ? "pass" : "fail") << ','
          << num(r.gamma.extrapolation.lambda_inf) << ','
          << num(r.gamma.extrapolation.error_estimate) << ','
          << num(r.gamma_prime.extrapolation.lambda_inf) << ','
          << num(r.gamma_prime.extrapolation.error_estimate) << ',' << num(r.margin) << ','
          << num(r.combined_error) << ',' << to_string(r.verdict) << "\r\n";
    } else {
      out << ',' << csv_quote(p.status) << ",,,,,,,,,\r\n";
    }
  }
  return out.str();
}

std::string levels_csv_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "side,level,h,lambda,n_dofs,residual\r\n";
  for (int side = 0; side < 2; ++side) {
    const SideResult& s = side == 0 ? report.gamma : report.gamma_prime;
    for (std::size_t k = 0; k < s.levels.size(); ++k) {
      out << (side == 0 ? "gamma" : "gamma_prime") << ',' << k << ',' << num(s.levels[k].h)
          << ',' << num(s.levels[k].lambda) << ',' << s.levels[k].n_dofs << ','
          << num(s.levels[k].residual) << "\r\n";
    }
  }
  return out.str();
}

std::string lambda_plot_svg(const ComparisonReport& report) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  auto scan = [&](const SideResult& s) {
    for (const LevelResult& l : s.levels) {
      x_lo = std::min(x_lo, l.h);
      x_hi = std::max(x_hi, l.h);
      y_lo = std::min(y_lo, l.lambda);
      y_hi = std::max(y_hi, l.lambda);
    }
    y_lo = std::min(y_lo, s.extrapolation.lambda_inf);
    y_hi = std::max(y_hi, s.extrapolation.lambda_inf);
  };
  scan(report.gamma);
  scan(report.gamma_prime);

  SvgPlot plot(x_lo, x_hi, y_lo, y_hi, report.name + ": lambda vs h");
  const char* colors[2] = {"#c0392b", "#2c3e90"};
  for (int side = 0; side < 2; ++side) {
    const SideResult& s = side == 0 ? report.gamma : report.gamma_prime;
    std::vector<Point2> pts;
    for (const LevelResult& l : s.levels) pts.push_back({l.h, l.lambda});
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
    plot.polyline(pts, colors[side]);
    for (const Point2& p : pts) plot.circle(p, colors[side], "none");
    plot.hline(s.extrapolation.lambda_inf, colors[side]);
    plot.label({pts.back().x, pts.back().y}, side == 0 ? "gamma" : "gamma_prime", colors[side]);
  }
  return plot.finish();
}

std::string profile_plot_svg(const MonotonicityProfile& profile, const std::string& title) {
  double total = 0.0, y_lo = 0.0, y_hi = 0.0;
  for (const ArcProfile& ap : profile.arcs) {
    if (!ap.s.empty()) total += ap.s.back();
    for (double v : ap.value) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }

  SvgPlot plot(0.0, total, y_lo, y_hi, title + ": (b.tau)(b.nu) along the remainder");
  plot.hline(0.0, "#bbb");
  double offset = 0.0;
  std::vector<double> arc_ends;
  for (const ArcProfile& ap : profile.arcs) {
    std::vector<Point2> pts;
    for (std::size_t k = 0; k < ap.s.size(); ++k) pts.push_back({offset + ap.s[k], ap.value[k]});
    plot.polyline(pts, ap.is_gamma_prime ? "#1a8f3c" : "#2c3e90");
    if (!ap.s.empty()) offset += ap.s.back();
    arc_ends.push_back(offset);
  }
  // Corner markers: filled circle for the left limit, open circle for the
  // right limit; an up-jump is highlighted in red.
  for (std::size_t j = 0; j < profile.corners.size(); ++j) {
    const double x = arc_ends[j];
    const CornerLimits& cl = profile.corners[j];
    const bool up_jump = cl.right > cl.left + 1e-12;
    plot.vline(x, up_jump ? "#c0392b" : "#bbb");
    plot.circle({x, cl.left}, up_jump ? "#c0392b" : "#2c3e90", "none");
    plot.circle({x, cl.right}, "white", up_jump ? "#c0392b" : "#2c3e90");
  }
  return plot.finish();
}

std::string sweep_margin_svg(const std::vector<SweepPoint>& points, const std::string& title) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 0.0, y_hi = 0.0;
  std::vector<Point2> pts;
  for (const SweepPoint& p : points) {
    if (!p.report) continue;
    pts.push_back({p.value, p.report->margin});
    x_lo = std::min(x_lo, p.value);
    x_hi = std::max(x_hi, p.value);
    y_lo = std::min(y_lo, p.report->margin);
    y_hi = std::max(y_hi, p.report->margin);
  }
  SvgPlot plot(x_lo, x_hi, y_lo, y_hi, title + ": eigenvalue margin per grid point");
  plot.hline(0.0, "#bbb");
  plot.polyline(pts, "#2c3e90");
  for (const Point2& p : pts) plot.circle(p, "#2c3e90", "none");
  return plot.finish();
}

std::vector<std::string> emit_report(const ComparisonReport& report, const std::string& out_dir,
                                     const std::string& format) {
  const std::string base = sanitize(report.name);
  if (format == "json") return {write_file(out_dir, base + ".json", to_json_text(report))};
  if (format == "csv") return {write_file(out_dir, base + ".csv", levels_csv_text(report))};
  if (format == "svg") {
    return {write_file(out_dir, base + "_lambda.svg", lambda_plot_svg(report)),
            write_file(out_dir, base + "_profile.svg",
                       profile_plot_svg(report.profile, report.name))};
  }
  throw std::invalid_argument("unknown report format '" + format + "'");
}

std::vector<std::string> emit_report(const std::vector<SweepPoint>& points,
                                     const std::string& name, const std::string& out_dir,
                                     const std::string& format) {
  const std::string base = sanitize(name);
  if (format == "json") return {write_file(out_dir, base + ".json", sweep_json_text(points, name))};
  if (format == "csv") return {write_file(out_dir, base + ".csv", sweep_csv_text(points))};
  if (format == "svg") {
    return {write_file(out_dir, base + "_margins.svg", sweep_margin_svg(points, name))};
  }
  throw std::invalid_argument("unknown report format '" + format + "'");
}

std::vector<std::string> emit_report(const InclusionReport& report, const std::string& out_dir,
                                     const std::string& format) {
  const std::string base = sanitize(report.name);
  if (format == "json") return {write_file(out_dir, base + ".json", to_json_text(report))};
  throw std::invalid_argument("inclusion reports support only the json format");
}

std::vector<std::string> emit_report(const SolveReport& report, const std::string& out_dir,
                                     const std::string& format) {
  const std::string base = sanitize(report.name);
  if (format == "json") return {write_file(out_dir, base + ".json", to_json_text(report))};
  throw std::invalid_argument("solve reports support only the json format");
}

std::vector<std::string> emit_report(const IdentityReport& report, const std::string& out_dir,
                                     const std::string& format) {
  const std::string base = sanitize(report.name);
  if (format == "json") return {write_file(out_dir, base + ".json", to_json_text(report))};
  throw std::invalid_argument("identity reports support only the json format");
}

std::vector<std::string> emit_hypothesis_report(const HypothesisReport& report,
                                                const std::string& name,
                                                const std::string& out_dir,
                                                const std::string& format) {
  const std::string base = sanitize(name);
  if (format == "json") {
    return {write_file(out_dir, base + ".json", hypothesis_json_text(report, name))};
  }
  throw std::invalid_argument("check reports support only the json format");
}

}  // namespace zaremba
