#include "critcurve/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <optional>

#include "critcurve/error.hpp"

namespace critcurve {

std::optional<double> gamma_level_q(int n, double p) {
  require(n >= 1 && p > 1.0, "Gamma level set needs n >= 1 and p > 1");
  const double half = 0.5 * n;
  // Branch q <= p: (p + 1) / (pq - 1) = n/2.
  const double q_low = (2.0 * (p + 1.0) / n + 1.0) / p;
  if (q_low <= p && q_low > 1.0) return q_low;
  // Branch q > p: (q + 1) / (pq - 1) = n/2.
  const double denom = half * p - 1.0;
  if (denom <= 0.0) return std::nullopt;
  const double q_high = (1.0 + half) / denom;
  if (q_high > p && q_high > 1.0) return q_high;
  return std::nullopt;
}

namespace {

constexpr int kCurvePoints = 200;

// Spreads the points over the visible stretch of the curve, located by a fine
// scan in p; the curves are monotone, so that stretch is one interval.
template <class F>
std::vector<std::pair<double, double>> polyline(double p_max, double q_max, F&& q_of_p) {
  auto visible = [&](double p) {
    const std::optional<double> q = q_of_p(p);
    return q && *q >= 1.0 && *q <= q_max;
  };
  constexpr int kScan = 20000;
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int i = 0; i <= kScan; ++i) {
    const double p = 1.0 + (p_max - 1.0) * (i + 0.5) / (kScan + 1);
    if (!visible(p)) continue;
    if (!found) lo = p;
    hi = p;
    found = true;
  }
  std::vector<std::pair<double, double>> out;
  if (!found) return out;
  out.reserve(kCurvePoints);
  for (int i = 0; i < kCurvePoints; ++i) {
    const double p = lo + (hi - lo) * i / (kCurvePoints - 1);
    if (const std::optional<double> q = q_of_p(p)) out.emplace_back(p, *q);
  }
  return out;
}

std::string_view fill(ObservedVerdict v) {
  switch (v) {
    case ObservedVerdict::blowup: return "#d9534f";
    case ObservedVerdict::decay: return "#5cb85c";
    case ObservedVerdict::ambiguous: return "#bbbbbb";
    case ObservedVerdict::failed: return "#333333";
  }
  return "#ffffff";
}

}  // namespace

std::vector<std::pair<double, double>> critical_curve(int n, double p_max, double q_max) {
  const double c = 1.0 + 2.0 / n;
  return polyline(p_max, q_max, [c](double p) { return std::optional<double>(c / p); });
}

std::vector<std::pair<double, double>> gamma_curve(int n, double p_max, double q_max) {
  return polyline(p_max, q_max, [n](double p) { return gamma_level_q(n, p); });
}

std::string phase_diagram_svg(int n, const SweepResult& result, std::string_view banner_text) {
  require(!result.rows.empty(), "phase diagram needs at least one sweep cell");
  double p_max = 0.0, q_max = 0.0;
  std::vector<double> ps, qs;
  for (const auto& r : result.rows) {
    ps.push_back(r.p);
    qs.push_back(r.q);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  auto spacing = [](const std::vector<double>& v) { return v.size() > 1 ? (v.back() - v.front()) / (v.size() - 1) : 0.5; };
  const double dp = spacing(ps), dq = spacing(qs);
  p_max = ps.back() + 0.6 * dp;
  q_max = qs.back() + 0.6 * dq;

  constexpr double W = 560, H = 560, M = 60;
  auto X = [&](double p) { return M + (p - 1.0) / (p_max - 1.0) * (W - 2 * M); };
  auto Y = [&](double q) { return H - M - (q - 1.0) / (q_max - 1.0) * (H - 2 * M); };

  std::string s = fmt::format("<!-- {} -->\n", banner_text);
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      W, H, W, H);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);

  const double cw = 0.8 * dp / (p_max - 1.0) * (W - 2 * M);
  const double ch = 0.8 * dq / (q_max - 1.0) * (H - 2 * M);
  for (const auto& r : result.rows) {
    s += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\" stroke=\"{}\" "
        "stroke-width=\"{}\"><title>p={} q={} predicted={} observed={}</title></rect>\n",
        X(r.p) - cw / 2, Y(r.q) - ch / 2, cw, ch, fill(r.observed), r.in_band ? "#000000" : "none",
        r.in_band ? 1.5 : 0, r.p, r.q, to_string(r.predicted), to_string(r.observed));
  }

  auto path = [&](const std::vector<std::pair<double, double>>& pts, std::string_view color, std::string_view dash) {
    if (pts.empty()) return std::string();
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i)
      d += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "" : " ", X(pts[i].first), Y(pts[i].second));
    return fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" stroke-dasharray=\"{}\"/>\n",
                       d, color, dash);
  };
  s += path(critical_curve(n, p_max, q_max), "#1f3b99", "none");
  s += path(gamma_curve(n, p_max, q_max), "#b36b00", "6,4");

  // Axes and ticks.
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", M, H - M, W - M);
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", M, H - M, M);
  for (double p : ps)
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.3g}</text>\n", X(p), H - M + 18, p);
  for (double q : qs)
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", M - 6, Y(q) + 4, q);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">p</text>\n", W / 2, H - 15);
  s += fmt::format("<text x=\"15\" y=\"{}\" text-anchor=\"middle\">q</text>\n", H / 2);

  // Legend.
  const double lx = W - M - 170, ly = 20;
  const std::pair<std::string_view, ObservedVerdict> entries[] = {{"blow-up observed", ObservedVerdict::blowup},
                                                                  {"decay observed", ObservedVerdict::decay},
                                                                  {"ambiguous", ObservedVerdict::ambiguous},
                                                                  {"failed", ObservedVerdict::failed}};
  for (int i = 0; i < 4; ++i) {
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", lx, ly + 15 * i,
                     fill(entries[i].second));
    s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", lx + 15, ly + 15 * i + 9, entries[i].first);
  }
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#1f3b99\" stroke-width=\"2\"/>\n", lx,
                   ly + 65, lx + 10);
  s += fmt::format("<text x=\"{}\" y=\"{}\">pq = 1 + 2/n</text>\n", lx + 15, ly + 69);
  s += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#b36b00\" stroke-width=\"2\" "
      "stroke-dasharray=\"6,4\"/>\n",
      lx, ly + 80, lx + 10);
  s += fmt::format("<text x=\"{}\" y=\"{}\">Gamma(p,q) = n/2</text>\n", lx + 15, ly + 84);
  s += "</svg>\n";
  return s;
}

}  // namespace critcurve
