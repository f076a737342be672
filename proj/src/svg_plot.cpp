#include "fpump/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace fpump {

namespace {

constexpr double kWidth = 860, kHeight = 460;
constexpr double kLeft = 70, kRight = 790, kTop = 50, kBottom = 400;

struct Axis {
  double lo = 0.0, hi = 1.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-12) hi = lo + 1.0;
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

double xpix(double f) { return kLeft + f * (kRight - kLeft); }
double ypix(double f) { return kBottom - f * (kBottom - kTop); }

const char* move_color(MoveKind k) {
  switch (k) {
    case MoveKind::RandomizedRounding: return "#1f77b4";
    case MoveKind::WeakPerturbation: return "#2ca02c";
    case MoveKind::StrongPerturbation: return "#d62728";
    case MoveKind::WeakPerturbationDomain: return "#9467bd";
    case MoveKind::StrongPerturbationDomain: return "#ff7f0e";
  }
  return "#333";
}

std::string header(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
      "text-anchor=\"middle\">{}</text>\n",
      kWidth, kHeight, kWidth, kHeight, (kLeft + kRight) / 2, title);
}

std::string axes_frame() {
  return fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>\n",
      kLeft, kTop, kRight - kLeft, kBottom - kTop);
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* color,
                     double width = 1.5) {
  if (pts.empty()) return "";
  std::string d;
  for (const auto& [x, y] : pts) d += fmt::format("{:.1f},{:.1f} ", x, y);
  return fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                     d, color, width);
}

std::string y_labels(const Axis& axis, double x, const char* color, const char* anchor) {
  std::string out;
  for (int i = 0; i <= 4; ++i) {
    const double v = axis.lo + (axis.hi - axis.lo) * i / 4.0;
    out += fmt::format(
        "<text x=\"{}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{}\" "
        "text-anchor=\"{}\">{:.4g}</text>\n",
        x, ypix(i / 4.0) + 4, color, anchor, v);
  }
  return out;
}

std::string x_labels(int max_iter) {
  std::string out;
  for (int i = 0; i <= 4; ++i) {
    const int it = max_iter * i / 4;
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"middle\">{}</text>\n",
        xpix(i / 4.0), kBottom + 18, it);
  }
  out += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
      "text-anchor=\"middle\">iteration</text>\n",
      (kLeft + kRight) / 2, kBottom + 40);
  return out;
}

/// Per-iteration state reconstructed from candidate events: the fractionality
/// of the pair after the iteration, plus alpha and the accepted move.
struct IterPoint {
  int iter;
  double alpha;
  double fractionality;
  double quality;
  bool has_accept;
  MoveKind move;
};

std::vector<IterPoint> per_iteration(const std::vector<IterEvent>& events) {
  std::map<int, IterPoint> by_iter;
  double current = events.empty() ? 0.0 : events.front().fractionality - events.front().dd_raw;
  double quality = events.empty() ? 0.0 : events.front().quality;
  for (const IterEvent& e : events) {
    auto [it, inserted] = by_iter.try_emplace(
        e.iter, IterPoint{e.iter, e.alpha, current, quality, false, e.move});
    if (e.accepted) {
      current = e.fractionality;
      quality = e.quality;
      it->second.has_accept = true;
      it->second.move = e.move;
    }
    it->second.fractionality = current;
    it->second.quality = quality;
    it->second.alpha = e.alpha;
  }
  std::vector<IterPoint> out;
  out.reserve(by_iter.size());
  for (auto& [_, p] : by_iter) out.push_back(p);
  return out;
}

}  // namespace

std::vector<IterEvent> filter_run(const std::vector<IterEvent>& events, int run) {
  std::vector<IterEvent> out;
  for (const IterEvent& e : events) {
    if (e.run == run) out.push_back(e);
  }
  return out;
}

std::string render_distance_quality_svg(const std::vector<IterEvent>& events,
                                        const std::string& title) {
  const auto pts = per_iteration(events);
  std::string svg = header(title) + axes_frame();
  if (pts.empty()) return svg + "</svg>\n";

  Axis dist, qual;
  dist.lo = dist.hi = pts.front().fractionality;
  qual.lo = qual.hi = pts.front().quality;
  for (const auto& p : pts) {
    dist.include(p.fractionality);
    qual.include(p.quality);
  }
  dist.pad();
  qual.pad();
  const int max_iter = pts.back().iter;

  std::vector<std::pair<double, double>> dline, qline;
  for (const auto& p : pts) {
    const double x = xpix(static_cast<double>(p.iter) / std::max(1, max_iter));
    dline.emplace_back(x, ypix(dist.frac(p.fractionality)));
    qline.emplace_back(x, ypix(qual.frac(p.quality)));
  }
  svg += polyline(dline, "#1f77b4");
  svg += polyline(qline, "#d62728");
  svg += y_labels(dist, kLeft - 8, "#1f77b4", "end");
  svg += y_labels(qual, kRight + 8, "#d62728", "start");
  svg += x_labels(max_iter);
  svg += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1f77b4\">"
      "distance</text>\n"
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\" "
      "text-anchor=\"end\">quality</text>\n",
      kLeft, kTop - 10, kRight, kTop - 10);
  return svg + "</svg>\n";
}

std::string render_fractionality_svg(const std::vector<IterEvent>& events,
                                     const std::string& title) {
  const auto pts = per_iteration(events);
  std::string svg = header(title) + axes_frame();
  if (pts.empty()) return svg + "</svg>\n";

  Axis frac, alpha;
  frac.lo = frac.hi = pts.front().fractionality;
  for (const auto& p : pts) frac.include(p.fractionality);
  frac.pad();
  alpha.lo = 0.0;
  alpha.hi = 1.0;
  const int max_iter = pts.back().iter;

  std::vector<std::pair<double, double>> fline, aline;
  for (const auto& p : pts) {
    const double x = xpix(static_cast<double>(p.iter) / std::max(1, max_iter));
    fline.emplace_back(x, ypix(frac.frac(p.fractionality)));
    aline.emplace_back(x, ypix(alpha.frac(p.alpha)));
  }
  svg += polyline(fline, "#444");
  svg += polyline(aline, "#bbbbbb");
  for (const auto& p : pts) {
    if (!p.has_accept) continue;
    const double x = xpix(static_cast<double>(p.iter) / std::max(1, max_iter));
    svg += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"2.5\" fill=\"{}\"/>\n", x,
                       ypix(frac.frac(p.fractionality)), move_color(p.move));
  }
  svg += y_labels(frac, kLeft - 8, "#444", "end");
  svg += y_labels(alpha, kRight + 8, "#999", "start");
  svg += x_labels(max_iter);
  svg += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#444\">"
      "fractionality</text>\n"
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#999\" "
      "text-anchor=\"end\">alpha</text>\n",
      kLeft, kTop - 10, kRight, kTop - 10);
  double lx = kLeft;
  for (MoveKind k :
       {MoveKind::RandomizedRounding, MoveKind::WeakPerturbation, MoveKind::StrongPerturbation,
        MoveKind::WeakPerturbationDomain, MoveKind::StrongPerturbationDomain}) {
    svg += fmt::format(
        "<circle cx=\"{:.1f}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>"
        "<text x=\"{:.1f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
        lx, kBottom + 52, move_color(k), lx + 7, kBottom + 55, to_string(k));
    lx += 160;
  }
  return svg + "</svg>\n";
}

}  // namespace fpump
