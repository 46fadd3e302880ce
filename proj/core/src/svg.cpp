#include "curveflow/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

namespace curveflow {

namespace {

struct Viewport {
  double scale = 1.0;
  double x0 = 0.0;  // world coordinates of the canvas origin
  double y1 = 0.0;  // world y mapped to canvas top
  double size = 0.0;

  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return (y1 - y) * scale; }  // y grows downward on canvas
};

Viewport fit_viewport(std::span<const Snapshot> snapshots, const SvgStyle& style) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Snapshot& snap : snapshots) {
    for (const Vec2& p : snap.position) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (!(xmax >= xmin)) throw InvalidArgument("no nodes to draw");
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  Viewport vp;
  vp.size = style.size;
  vp.scale = style.size * (1.0 - 2.0 * style.margin) / span;
  // center the bounding box on the canvas
  const double pad_x = 0.5 * (style.size / vp.scale - (xmax - xmin));
  const double pad_y = 0.5 * (style.size / vp.scale - (ymax - ymin));
  vp.x0 = xmin - pad_x;
  vp.y1 = ymax + pad_y;
  return vp;
}

void append_polygon(std::string& out, const Snapshot& snap, const Viewport& vp,
                    const char* stroke, double width, double opacity, bool markers) {
  char buf[96];
  out += "<path d=\"";
  for (std::size_t i = 0; i < snap.position.size(); ++i) {
    const Vec2& p = snap.position[i];
    std::snprintf(buf, sizeof buf, "%c%.2f %.2f ", i == 0 ? 'M' : 'L', vp.px(p.x), vp.py(p.y));
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "Z\" fill=\"none\" stroke=\"%s\" stroke-width=\"%.2f\" opacity=\"%.2f\"/>\n",
                stroke, width, opacity);
  out += buf;
  if (markers) {
    for (const Vec2& p : snap.position) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.8\" fill=\"%s\"/>\n",
                    vp.px(p.x), vp.py(p.y), stroke);
      out += buf;
    }
  }
}

std::string document(const Viewport& vp, const std::string& body) {
  char head[160];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                vp.size, vp.size, vp.size, vp.size);
  return std::string(head) + "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body +
         "</svg>\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void write_frames(const std::filesystem::path& dir, std::span<const Snapshot> snapshots,
                  const SvgStyle& style) {
  if (snapshots.empty()) throw InvalidArgument("no snapshots to draw");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const Viewport vp = fit_viewport(snapshots, style);
  char name[32];
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    std::string body;
    char label[96];
    std::snprintf(label, sizeof label,
                  "<text x=\"8\" y=\"18\" font-size=\"13\" fill=\"#444\">t = %.6g</text>\n",
                  snapshots[i].t);
    body += label;
    append_polygon(body, snapshots[i], vp, "#1f6feb", 1.5, 1.0, style.node_markers);
    std::snprintf(name, sizeof name, "frame_%04zu.svg", i);
    write_text(dir / name, document(vp, body));
  }

  std::string body;
  for (std::size_t i = snapshots.size(); i-- > 1;) {
    append_polygon(body, snapshots[i], vp, "#1f6feb", 1.0, 0.55, false);
  }
  append_polygon(body, snapshots[0], vp, "#111111", 2.5, 1.0, false);
  write_text(dir / "overlay.svg", document(vp, body));
}

}  // namespace curveflow
