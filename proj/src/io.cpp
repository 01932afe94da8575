#include "gm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "gm/format.hpp"
#include "gm/spaces.hpp"

namespace gm {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::vector<std::string> coordinate_columns(const Space& space, const std::string& prefix) {
  if (space.kind() == SpaceKind::tree) return {prefix + "_edge", prefix + "_offset"};
  std::size_t dim = 0;
  if (const auto* e = dynamic_cast<const EuclideanSpace*>(&space)) dim = e->dim();
  if (const auto* h = dynamic_cast<const PoincareBall*>(&space)) dim = h->dim();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::invalid_config, "trace csv: " + why); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad("bad number '" + s + "'");
  return v;
}

}  // namespace

std::string trace_csv(const SaddleProblem& problem, const IterateTrace& trace) {
  const bool ref = trace.reference.has_value();
  std::vector<std::string> header = {"n", "lambda_n", "step_distance", "residual"};
  if (ref) header.push_back("dist_to_reference");
  for (auto& c : coordinate_columns(problem.X(), "x")) header.push_back(c);
  for (auto& c : coordinate_columns(problem.Y(), "y")) header.push_back(c);

  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    out += std::to_string(n + 1);
    if (n < trace.steps.size()) {
      out += "," + shortest(trace.lambdas[n]) + "," + shortest(trace.steps[n]) + "," + shortest(trace.residuals[n]);
    } else {
      out += ",,,";
    }
    if (ref) out += "," + shortest(trace.dist_to_reference[n]);
    for (double c : trace.iterates[n].x.coords) out += "," + shortest(c);
    for (double c : trace.iterates[n].y.coords) out += "," + shortest(c);
    out += '\n';
  }
  return out;
}

IterateTrace parse_trace_csv(const SaddleProblem& problem, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) bad("empty input");
  const auto header = split(line);
  const auto xc = coordinate_columns(problem.X(), "x");
  const auto yc = coordinate_columns(problem.Y(), "y");
  const bool ref = header.size() > 4 && header[4] == "dist_to_reference";
  const std::size_t lead = ref ? 5 : 4;
  if (header.size() != lead + xc.size() + yc.size()) bad("header does not match the problem's spaces");

  IterateTrace tr;
  std::size_t expected = 1;
  bool ended = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (ended) bad("step fields missing before the last row");
    const auto cells = split(line);
    if (cells.size() != header.size()) bad("row " + std::to_string(expected) + " has the wrong number of fields");
    if (parse_number(cells[0]) != static_cast<double>(expected)) bad("rows out of order");
    if (cells[1].empty()) {
      ended = true;
    } else {
      tr.lambdas.push_back(parse_number(cells[1]));
      tr.steps.push_back(parse_number(cells[2]));
      tr.residuals.push_back(parse_number(cells[3]));
    }
    if (ref) tr.dist_to_reference.push_back(parse_number(cells[4]));
    ProductPoint z;
    for (std::size_t i = 0; i < xc.size(); ++i) z.x.coords.push_back(parse_number(cells[lead + i]));
    for (std::size_t i = 0; i < yc.size(); ++i) z.y.coords.push_back(parse_number(cells[lead + xc.size() + i]));
    tr.iterates.push_back(std::move(z));
    ++expected;
  }
  if (tr.iterates.empty()) bad("no rows");
  if (tr.steps.size() + 1 != tr.iterates.size()) bad("every row but the last needs step fields");
  return tr;
}

ordered_json minimax_json(const SaddleProblem& problem, const MinimaxReport& r) {
  ordered_json j;
  j["problem"] = problem.name;
  j["maxmin"] = r.maxmin;
  j["maxmin_x"] = r.maxmin_x.coords;
  j["maxmin_y"] = r.maxmin_y.coords;
  j["minmax"] = r.minmax;
  j["minmax_x"] = r.minmax_x.coords;
  j["minmax_y"] = r.minmax_y.coords;
  j["gap"] = r.gap;
  j["size_x"] = r.size_x;
  j["size_y"] = r.size_y;
  j["step_x"] = r.step_x;
  j["step_y"] = r.step_y;
  j["boxed"] = r.boxed;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace gm
