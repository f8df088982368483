// Copyright 2026 The syneval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "syneval/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "syneval/error.h"
#include "syneval/report.h"

namespace syneval {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 90.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    return kLeft + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.5) * (kHeight - kTop - kBottom);
  }
};

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& y_label, bool x_ticks) {
  const double left = kLeft, right = kWidth - kRight, top = kTop, bottom = kHeight - kBottom;
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(right)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(f.py(v) + 4)
        << "\" text-anchor=\"end\">" << tick(v) << "</text>\n";
  }
  if (x_ticks) {
    for (int i = 0; i <= 4; ++i) {
      const double v = f.x0 + (f.x1 - f.x0) * i / 4.0;
      out << "<text x=\"" << num(f.px(v)) << "\" y=\"" << num(bottom + 16)
          << "\" text-anchor=\"middle\">" << tick(v) << "</text>\n";
    }
  }
  out << "<text x=\"16\" y=\"" << num((top + bottom) / 2) << "\" transform=\"rotate(-90 16 "
      << num((top + bottom) / 2) << ")\" text-anchor=\"middle\">" << escape(y_label)
      << "</text>\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
}

std::string label_of(const AxisReport& r) {
  std::string s = r.extractor_id;
  if (!r.fv.empty()) s += " | " + r.fv;
  if (!r.transform.empty()) s += " | " + r.transform;
  return s;
}

}  // namespace

std::string svg_bar_chart(const std::string& title, const std::string& y_label,
                          const std::vector<std::pair<std::string, double>>& bars) {
  double hi = 0.0, lo = 0.0;
  for (const auto& [_, v] : bars) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  if (hi == lo) hi = lo + 1.0;
  const Frame f{0.0, static_cast<double>(std::max<std::size_t>(bars.size(), 1)), lo, hi * 1.05};
  std::ostringstream out;
  open_svg(out, title);
  axes(out, f, y_label, false);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double x = f.px(i + 0.15), w = f.px(i + 0.85) - x;
    const double top = f.py(std::max(bars[i].second, 0.0)), base = f.py(std::min(bars[i].second, 0.0));
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(top) << "\" width=\"" << num(w)
        << "\" height=\"" << num(base - top) << "\" fill=\"" << kPalette[i % 8] << "\"/>\n";
    out << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(top - 4)
        << "\" text-anchor=\"middle\">" << tick(bars[i].second) << "</text>\n";
    const double ly = kHeight - kBottom + 12;
    out << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(ly) << "\" transform=\"rotate(30 "
        << num(x + w / 2) << ' ' << num(ly) << ")\" font-size=\"9\">" << escape(bars[i].first)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (first) {
        x0 = x1 = p.param;
        y0 = y1 = p.value;
        first = false;
      }
      x0 = std::min(x0, p.param), x1 = std::max(x1, p.param);
      y0 = std::min(y0, p.value), y1 = std::max(y1, p.value);
    }
  }
  if (y1 - y0 < 1e-9) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  const Frame f{x0, x1, y0 - pad, y1 + pad};
  std::ostringstream out;
  open_svg(out, title);
  axes(out, f, y_label, true);
  out << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - kBottom + 34)
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < series[i].points.size(); ++k) {
      const auto& p = series[i].points[k];
      out << (k ? " " : "") << num(f.px(p.param)) << ',' << num(f.py(p.value));
    }
    out << "\"/>\n";
    const double ly = kHeight - kBottom + 50 + 12.0 * static_cast<double>(i % 3);
    const double lx = kLeft + 190.0 * static_cast<double>(i / 3);
    out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/><text x=\"" << num(lx + 14) << "\" y=\"" << num(ly) << "\">"
        << escape(series[i].label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_bucket_grid(const std::string& title, const std::vector<std::string>& row_labels,
                            const std::vector<std::vector<BucketResult>>& rows) {
  double scale = 1e-12;
  for (const auto& row : rows) {
    for (const auto& b : row) scale = std::max(scale, std::abs(b.delta_rmse));
  }
  const double cell_w = 90.0, cell_h = 36.0, left = 260.0, top = 60.0;
  const double width = left + 4 * cell_w + 20;
  const double height = top + cell_h * static_cast<double>(rows.size()) + 30;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  for (std::size_t b = 0; b < std::size(kDisentanglementBuckets); ++b) {
    const auto& spec = kDisentanglementBuckets[b];
    out << "<text x=\"" << num(left + cell_w * (b + 0.5)) << "\" y=\"" << num(top - 8)
        << "\" text-anchor=\"middle\">" << escape(std::string(spec.label)) << " ["
        << tick(spec.lo * 100) << "%, " << tick(spec.hi * 100) << "%]</text>\n";
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y = top + cell_h * r;
    out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + cell_h / 2 + 4)
        << "\" text-anchor=\"end\">" << escape(r < row_labels.size() ? row_labels[r] : "")
        << "</text>\n";
    for (std::size_t b = 0; b < rows[r].size(); ++b) {
      const double d = rows[r][b].delta_rmse;
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, std::abs(d) / scale))));
      char fill[16];
      if (d >= 0) {
        std::snprintf(fill, sizeof(fill), "#ff%02x%02x", shade, shade);
      } else {
        std::snprintf(fill, sizeof(fill), "#%02x%02xff", shade, shade);
      }
      out << "<rect x=\"" << num(left + cell_w * b) << "\" y=\"" << num(y) << "\" width=\""
          << num(cell_w) << "\" height=\"" << num(cell_h) << "\" fill=\"" << fill
          << "\" stroke=\"#444\"/>\n"
          << "<text x=\"" << num(left + cell_w * (b + 0.5)) << "\" y=\"" << num(y + cell_h / 2 + 4)
          << "\" text-anchor=\"middle\">" << tick(d) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::filesystem::path> write_plots(const std::filesystem::path& out_dir,
                                               const std::vector<AxisReport>& unordered) {
  std::filesystem::create_directories(out_dir);
  const std::vector<AxisReport> reports = sorted_by_job(unordered);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& svg) {
    write_text(out_dir / name, svg);
    written.push_back(out_dir / name);
  };

  const std::pair<Axis, const char*> bar_axes[] = {{Axis::kInformativeness, "rmse"},
                                                   {Axis::kPEquivariance, "rmse"},
                                                   {Axis::kREquivariance, "cosine_mean"}};
  for (const auto& [axis, metric] : bar_axes) {
    std::vector<std::pair<std::string, double>> bars;
    for (const auto& r : reports) {
      if (r.axis == axis && r.metrics.contains(metric)) {
        bars.emplace_back(label_of(r), r.metrics.at(metric));
      }
    }
    if (!bars.empty()) {
      emit(std::string(axis_name(axis)) + ".svg",
           svg_bar_chart(std::string(axis_name(axis)), metric, bars));
    }
  }

  std::map<std::string, std::vector<Series>> curves;
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::vector<BucketResult>>>> grids;
  for (const auto& r : reports) {
    if (r.axis == Axis::kInvariance) {
      curves[r.transform].push_back({r.extractor_id, r.curve});
    } else if (r.axis == Axis::kDisentanglement) {
      auto& g = grids[r.transform];
      g.first.push_back(r.extractor_id + " | " + r.fv);
      g.second.push_back(r.buckets);
    }
  }
  for (const auto& [transform, series] : curves) {
    emit("invariance_" + transform + ".svg",
         svg_line_chart("invariance: " + transform, transform + " parameter", "mean cosine",
                        series));
  }
  for (const auto& [transform, grid] : grids) {
    emit("disentanglement_" + transform + ".svg",
         svg_bucket_grid("delta RMSE under " + transform, grid.first, grid.second));
  }
  return written;
}

}  // namespace syneval
