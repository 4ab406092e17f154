#include "rotamime/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>

#include "rotamime/conditions.hpp"

namespace rotamime {

namespace {

struct Frame {
  double x0, x1, y0, y1;
  double left, right, top, bottom; // pixel box

  double px(double x) const {
    return left + (x - x0) / (x1 - x0) * (right - left);
  }
  double py(double y) const {
    return bottom - (y - y0) / (y1 - y0) * (bottom - top);
  }
};

void append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& pts,
                     const char* color, double width) {
  std::string d;
  bool first = true;
  for (const auto& [x, y] : pts) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%c%.2f %.2f", first ? 'M' : 'L', f.px(x), f.py(y));
    d += buf;
    first = false;
  }
  std::string out = "<path d=\"" + d + "\" fill=\"none\" stroke=\"";
  out += color;
  char tail[64];
  std::snprintf(tail, sizeof tail, "\" stroke-width=\"%.2f\"/>\n", width);
  out += tail;
  return out;
}

double nice_spacing(double range) {
  const double base = std::pow(10.0, std::floor(std::log10(range)));
  if (range / base < 4.0) return base / 2.0;
  return base;
}

} // namespace

std::string scan_svg(const std::vector<ScanRecord>& records, const Rational& offset,
                     KernelTag kernel, int width, int height) {
  const double b = to_double(offset);
  double a_min = 0.0, a_max = 1.0;
  bool got = false;
  for (const ScanRecord& r : records) {
    if (!got) {
      a_min = a_max = r.a;
      got = true;
    }
    a_min = std::min(a_min, r.a);
    a_max = std::max(a_max, r.a);
  }
  if (!got || a_max == a_min) a_max = a_min + 1.0;

  Frame f;
  f.x0 = a_min;
  f.x1 = a_max;
  f.y0 = b - 1.0 - 0.03;
  f.y1 = b + 0.03;
  f.left = 56.0;
  f.right = width - 14.0;
  f.top = 14.0;
  f.bottom = height - 36.0;

  std::string out;
  append(out,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
         "viewBox=\"0 0 %d %d\">\n<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n",
         width, height, width, height, width, height);

  // vertical gridlines, cyan
  const double spacing = nice_spacing(a_max - a_min);
  for (double a = std::ceil(a_min / spacing) * spacing; a <= a_max + 1e-12; a += spacing) {
    append(out,
           "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"cyan\" "
           "stroke-width=\"1\"/>\n",
           f.px(a), f.top, f.px(a), f.bottom);
    append(out, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%g</text>\n",
           f.px(a), f.bottom + 16.0, a);
  }

  // attractor samples, deduplicated to half-pixel cells
  std::set<std::pair<int, int>> seen;
  std::string dots;
  for (const ScanRecord& r : records) {
    if (r.skipped) continue;
    for (double x : r.attractor_points) {
      if (x < f.y0 || x > f.y1) continue;
      const double px = f.px(r.a);
      const double py = f.py(x);
      const auto cell = std::make_pair(static_cast<int>(px * 2.0), static_cast<int>(py * 2.0));
      if (!seen.insert(cell).second) continue;
      char buf[48];
      std::snprintf(buf, sizeof buf, "M%.1f %.1fh0.7", px, py);
      dots += buf;
    }
  }
  out += "<path d=\"" + dots + "\" stroke=\"black\" stroke-width=\"0.7\" fill=\"none\"/>\n";

  // critical-point curves, red
  std::vector<std::pair<double, double>> upper, lower;
  for (std::size_t i = 0; i + 1 < records.size(); i += 2) {
    const double a = records[i].a;
    if (!(a > kernel_threshold(kernel))) continue;
    const CriticalPoints cp = critical_points(KernelFamily{kernel, a});
    upper.emplace_back(a, cp.plus);
    lower.emplace_back(a, cp.minus);
  }
  if (!upper.empty()) {
    out += polyline(f, upper, "red", 1.0);
    out += polyline(f, lower, "red", 1.0);
  }

  // frame and y labels
  append(out,
         "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
         "stroke=\"black\" stroke-width=\"1\"/>\n",
         f.left, f.top, f.right - f.left, f.bottom - f.top);
  const double marks[3] = {b - 1.0, 0.0, b};
  const char* names[3] = {"b-1", "0", "b"};
  for (int i = 0; i < 3; ++i)
    append(out, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%s</text>\n",
           f.left - 6.0, f.py(marks[i]) + 4.0, names[i]);
  out += "</svg>\n";
  return out;
}

std::string return_map_svg(const ReturnMapData& data, const Rational& offset,
                           KernelTag kernel, double a, int width, int height) {
  const MapSpec spec = make_spec(kernel, a, offset.num, offset.den);
  const double b = spec.offset;

  Frame f;
  f.x0 = b - 1.0;
  f.x1 = b;
  f.y0 = b - 1.0;
  f.y1 = b;
  f.left = 48.0;
  f.right = width - 12.0;
  f.top = 12.0;
  f.bottom = height - 28.0;

  std::string out;
  append(out,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
         "viewBox=\"0 0 %d %d\">\n<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n",
         width, height, width, height, width, height);

  std::vector<std::pair<double, double>> diag{{f.x0, f.y0}, {f.x1, f.y1}};
  out += polyline(f, diag, "#bbbbbb", 1.0);

  std::vector<std::pair<double, double>> curve;
  const int samples = 600;
  for (int i = 0; i <= samples; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * static_cast<double>(i) / samples;
    const double y = eval_F(spec, x);
    if (y >= f.y0 && y <= f.y1) curve.emplace_back(x, y);
  }
  out += polyline(f, curve, "green", 1.2);

  out += polyline(f, data.graph, "blue", 1.4);

  std::vector<std::pair<double, double>> nstep;
  const int ksamples = 200;
  for (int i = 0; i <= ksamples; ++i) {
    const double x = data.K.lo + data.K.width() * static_cast<double>(i) / ksamples;
    double y = x;
    for (long long s = 0; s < spec.n(); ++s) y = eval_hybrid(spec, y);
    nstep.emplace_back(x, y);
  }
  out += polyline(f, nstep, "magenta", 1.6);

  append(out,
         "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
         "stroke=\"black\" stroke-width=\"1\"/>\n",
         f.left, f.top, f.right - f.left, f.bottom - f.top);
  out += "</svg>\n";
  return out;
}

} // namespace rotamime
