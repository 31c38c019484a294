#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "unipoly/common.hpp"
#include "unipoly/polylike.hpp"

namespace unipoly {

using json = nlohmann::json;

struct RunConfig {
  int degree = 2;
  double c1 = 0.0;
  bool has_c1 = false;
  std::string param_query;  // "superstable:p" | "cascade:d" | "fibonacci:d"
  std::string variant = "auto";
  std::vector<double> thetas;
  int levels = 6;
  int samples = 4096;
  double tol = 1e-9;
  std::string out_dir = ".";
  std::vector<std::string> formats{"json"};

  static RunConfig from_json(const json& j);
  json to_json() const;
};

struct CommandResult {
  json report;
  int exit_code = 0;  // 0 ok, 2 at least one bound check failed
};

// Wraps a numeric result with its tolerance and provenance tag.
json numeric_entry(double value, double tol, const std::string& provenance);

CommandResult cmd_bounds(const RunConfig& cfg);
CommandResult cmd_analyze(const RunConfig& cfg);
CommandResult cmd_construct(const RunConfig& cfg);
CommandResult cmd_geometry(const RunConfig& cfg);
CommandResult cmd_search(const RunConfig& cfg);

// Resolves c1 from the config (direct value or parameter query).
double resolve_parameter(const RunConfig& cfg);

void write_text_file(const std::string& path, const std::string& content);

// Minimal SVG emission: world box [-2.5, 2.5]^2 by default.
class SvgWriter {
 public:
  SvgWriter(double world_min = -2.5, double world_max = 2.5, int pixels = 800);
  void add_curve(const SampledCurve& curve, const std::string& color, double width = 1.0);
  void add_segment(double x0, double y0, double x1, double y1, const std::string& color,
                   double width = 2.0);
  void add_label(double x, double y, const std::string& text);
  std::string str() const;

 private:
  double to_px_x(double x) const;
  double to_px_y(double y) const;
  double wmin_, wmax_;
  int px_;
  std::string body_;
};

}  // namespace unipoly
