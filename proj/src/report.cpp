#include "syndemic/report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace syndemic {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string file_stem(std::string s) {
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  return s;
}

double nice_step(double range) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

constexpr std::array<const char*, kCompartments> kColors = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "time";
  for (auto name : kCompartmentNames) os << ',' << name;
  os << ",N\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_number(traj.times[k]);
    const StateVector& x = traj.states[k];
    for (int i = 0; i < kCompartments; ++i) os << ',' << format_number(x(i));
    os << ',' << format_number(total_population(x)) << '\n';
  }
  return os.str();
}

std::string summary_csv(const std::vector<Check>& checks) {
  std::ostringstream os;
  os << "name,expected,actual,tolerance,mode,result,scenario,variant,note\n";
  for (const Check& c : checks) {
    os << csv_field(c.name) << ',' << format_number(c.expected) << ',' << format_number(c.actual) << ','
       << format_number(c.tolerance) << ',' << (c.relative ? "relative" : "absolute") << ','
       << (c.passed ? "pass" : "fail") << ',' << csv_field(c.scenario) << ',' << csv_field(c.variant)
       << ',' << csv_field(c.note) << '\n';
  }
  return os.str();
}

std::string table_csv(const Table& table) {
  std::ostringstream os;
  os << "label";
  for (const auto& c : table.columns) os << ',' << csv_field(c);
  os << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << csv_field(r < table.labels.size() ? table.labels[r] : std::to_string(r));
    for (double v : table.rows[r]) os << ',' << format_number(v);
    os << '\n';
  }
  return os.str();
}

std::string emit_svg(const Trajectory& traj, const std::vector<Compartment>& selection,
                     const std::string& title) {
  if (selection.empty()) throw std::invalid_argument("emit_svg: empty compartment selection");
  if (traj.times.empty()) throw std::invalid_argument("emit_svg: empty trajectory");

  const double width = 800, height = 500;
  const double left = 80, right = 150, top = 40, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;

  const double t0 = traj.times.front();
  double t1 = traj.times.back();
  if (!(t1 > t0)) t1 = t0 + 1.0;
  double ymax = 0.0;
  for (const StateVector& x : traj.states) {
    for (Compartment c : selection) ymax = std::max(ymax, x(c));
  }
  const double ystep = nice_step(ymax);
  const double ytop = std::max(ystep, std::ceil(ymax / ystep) * ystep);
  const double xstep = nice_step(t1 - t0);

  auto px = [&](double t) { return left + (t - t0) / (t1 - t0) * pw; };
  auto py = [&](double y) { return top + ph - y / ytop * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << top / 2 + 6 << "\" text-anchor=\"middle\">" << title
       << "</text>\n";
  }
  os << "<g class=\"axes\" stroke=\"black\">\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
     << "\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
  os << "</g>\n<g class=\"ticks\">\n";
  for (double t = std::ceil(t0 / xstep) * xstep; t <= t1 + 1e-9 * xstep; t += xstep) {
    os << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/><text x=\"" << px(t) << "\" y=\"" << top + ph + 20
       << "\" text-anchor=\"middle\">" << short_number(t) << "</text>\n";
  }
  for (double y = 0.0; y <= ytop + 1e-9 * ystep; y += ystep) {
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << left << "\" y2=\"" << py(y)
       << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << py(y) + 4
       << "\" text-anchor=\"end\">" << short_number(y) << "</text>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">time (years)</text>\n";
  os << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << top + ph / 2 << ")\">individuals</text>\n";

  for (std::size_t s = 0; s < selection.size(); ++s) {
    const Compartment c = selection[s];
    os << "<polyline fill=\"none\" stroke=\"" << kColors[static_cast<std::size_t>(c)]
       << "\" stroke-width=\"1.5\" data-compartment=\"" << kCompartmentNames[static_cast<std::size_t>(c)]
       << "\" points=\"";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      if (k) os << ' ';
      os << format_number(px(traj.times[k])) << ',' << format_number(py(traj.states[k](c)));
    }
    os << "\"/>\n";
  }
  os << "<g class=\"legend\">\n";
  for (std::size_t s = 0; s < selection.size(); ++s) {
    const Compartment c = selection[s];
    const double y = top + 10 + 18.0 * static_cast<double>(s);
    os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << y << "\" x2=\"" << left + pw + 40 << "\" y2=\"" << y
       << "\" stroke=\"" << kColors[static_cast<std::size_t>(c)] << "\" stroke-width=\"2\"/><text x=\""
       << left + pw + 46 << "\" y=\"" << y + 4 << "\">" << kCompartmentNames[static_cast<std::size_t>(c)]
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::filesystem::path resolve_out_dir(const std::string& requested) {
  const char* env = std::getenv("SYNDEMIC_OUT_DIR");
  if (env != nullptr && *env != '\0') return env;
  return requested.empty() ? std::filesystem::path(".") : std::filesystem::path(requested);
}

std::vector<std::filesystem::path> write_scenario(const ScenarioResult& result,
                                                  const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  const std::string stem = file_stem(result.name);
  auto put = [&](const std::string& file, const std::string& content) {
    const auto path = dir / file;
    write_file_atomic(path, content);
    written.push_back(path);
  };
  put(stem + "_summary.csv", summary_csv(result.checks));
  put(stem + "_table.csv", table_csv(result.table));
  for (const VariantResult& v : result.variants) {
    if (v.trajectory.times.empty()) continue;
    put(stem + "_" + file_stem(v.name) + ".csv", trajectory_csv(v.trajectory));
  }
  return written;
}

}  // namespace syndemic
