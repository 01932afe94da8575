#include "gm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gm/spaces.hpp"

namespace gm {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::invalid_config, why); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) bad(where + ": unknown key \"" + k + "\"");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where + ": expected a finite number");
  return v;
}

std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ProductPoint parse_product_point(const json& j, const ProductSpace& s, const std::string& where) {
  only_keys(j, {"x", "y"}, where);
  try {
    return {parse_point(require(j, "x", where), s.left()), parse_point(require(j, "y", where), s.right())};
  } catch (const Error& e) {
    bad(where + ": " + e.what());
  }
}

double sq(double t) { return t * t; }

bool bounded(const Space& s) {
  if (const auto* e = dynamic_cast<const EuclideanSpace*>(&s)) return e->is_bounded();
  return s.kind() == SpaceKind::tree;
}

std::shared_ptr<const SaddleProblem> inline_problem(const json& j) {
  const std::string where = "problem";
  only_keys(j, {"family", "name", "x_space", "y_space", "a", "b"}, where);
  const json& fam = require(j, "family", where);
  if (!fam.is_string()) bad("problem.family: expected a string");
  const std::string family = fam.get<std::string>();
  SpaceHandle X = parse_space(require(j, "x_space", where));
  SpaceHandle Y = parse_space(require(j, "y_space", where));
  const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "inline-" + family;

  SaddleProblem p{.name = name, .space = ProductSpace(X, Y)};
  p.grid_x = default_grid(*X);
  p.grid_y = default_grid(*Y);
  p.boxed = !bounded(*X) || !bounded(*Y);
  p.notes = "inline " + family;

  if (family == "zero") {
    p.f = [](const Point&, const Point&) { return 0.0; };
    p.certificates = {true, true, true, true, true, true};
    p.closed_form = [](const ProductPoint& z, double) { return z; };
  } else if (family == "bilinear") {
    const auto* ex = dynamic_cast<const EuclideanSpace*>(X.get());
    const auto* ey = dynamic_cast<const EuclideanSpace*>(Y.get());
    if (!ex || !ey || ex->dim() != ey->dim()) bad("problem: bilinear needs Euclidean spaces of equal dimension");
    p.f = [](const Point& x, const Point& y) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
      return s;
    };
    p.certificates = {true, true, true, true, true, true};
    if (!ex->is_constrained() && !ey->is_constrained()) {
      p.closed_form = [](const ProductPoint& z, double l) {
        ProductPoint r = z;
        for (std::size_t i = 0; i < z.x.size(); ++i) {
          r.x[i] = (z.x[i] + l * z.y[i]) / (1.0 + l * l);
          r.y[i] = (z.y[i] - l * z.x[i]) / (1.0 + l * l);
        }
        return r;
      };
      p.known_saddle = ProductPoint{Point(std::vector<double>(ex->dim(), 0.0)), Point(std::vector<double>(ey->dim(), 0.0))};
    }
  } else if (family == "squared_distance" || family == "sqrt_distance") {
    const Point a = [&] {
      try {
        return parse_point(require(j, "a", where), *X);
      } catch (const Error& e) {
        bad(std::string("problem.a: ") + e.what());
      }
    }();
    const Point b = [&] {
      try {
        return parse_point(require(j, "b", where), *Y);
      } catch (const Error& e) {
        bad(std::string("problem.b: ") + e.what());
      }
    }();
    p.known_saddle = ProductPoint{a, b};
    p.anchors = {ProductPoint{a, b}};
    if (family == "squared_distance") {
      p.f = [X, Y, a, b](const Point& x, const Point& y) { return sq(Y->distance(y, b)) / 2.0 - sq(X->distance(x, a)) / 2.0; };
      p.certificates = {true, true, true, true, true, true};
      // The maximizer of -l d(u,a)^2/2 - d(u,x)^2/2 lies on [x, a], which
      // stays inside any geodesically convex constraint.
      p.closed_form = [X, Y, a, b](const ProductPoint& z, double l) {
        const double t = l / (1.0 + l);
        return ProductPoint{X->geodesic(z.x, a, t), Y->geodesic(z.y, b, t)};
      };
    } else {
      p.f = [X, Y, a, b](const Point& x, const Point& y) { return std::sqrt(Y->distance(y, b)) - std::sqrt(X->distance(x, a)); };
      p.certificates = {false, false, true, true, true, true};
    }
  } else {
    bad("problem.family: unknown family \"" + family + "\" (zero, bilinear, squared_distance, sqrt_distance)");
  }
  return std::make_shared<const SaddleProblem>(std::move(p));
}

}  // namespace

SpaceHandle parse_space(const json& j) {
  const std::string where = "space";
  const json& kind = require(j, "kind", where);
  if (!kind.is_string()) bad("space.kind: expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "euclidean") {
      only_keys(j, {"kind", "dim", "constraint"}, where);
      const std::size_t dim = count(require(j, "dim", where), "space.dim");
      if (!j.contains("constraint")) return std::make_shared<EuclideanSpace>(dim);
      const json& c = j.at("constraint");
      const std::string type = require(c, "type", "space.constraint").get<std::string>();
      if (type == "box") {
        only_keys(c, {"type", "lower", "upper"}, "space.constraint");
        return std::make_shared<EuclideanSpace>(dim, BoxConstraint{numbers(require(c, "lower", "space.constraint"), "lower"),
                                                                   numbers(require(c, "upper", "space.constraint"), "upper")});
      }
      if (type == "ball") {
        only_keys(c, {"type", "radius"}, "space.constraint");
        return std::make_shared<EuclideanSpace>(dim, BallConstraint{number(require(c, "radius", "space.constraint"), "radius")});
      }
      if (type == "simplex") {
        only_keys(c, {"type"}, "space.constraint");
        return std::make_shared<EuclideanSpace>(dim, SimplexConstraint{});
      }
      bad("space.constraint.type: expected box, ball or simplex");
    }
    if (k == "poincare") {
      only_keys(j, {"kind", "dim"}, where);
      return std::make_shared<PoincareBall>(count(require(j, "dim", where), "space.dim"));
    }
    if (k == "tree") {
      only_keys(j, {"kind", "vertices", "edges"}, where);
      const std::size_t n = count(require(j, "vertices", where), "space.vertices");
      const json& edges = require(j, "edges", where);
      if (!edges.is_array()) bad("space.edges: expected an array of [u, v, length]");
      std::vector<TreeEdge> es;
      for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 3) bad("space.edges: each edge is [u, v, length]");
        es.push_back({count(e[0], "edge u"), count(e[1], "edge v"), number(e[2], "edge length")});
      }
      return std::make_shared<MetricTree>(n, es);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_config) throw;
    bad(std::string("space: ") + e.what());
  }
  bad("space.kind: expected euclidean, poincare or tree");
}

Point parse_point(const json& j, const Space& space) {
  Point p(numbers(j, "point"));
  if (!space.is_valid(p)) {
    try {
      space.validate(p);
    } catch (const Error& e) {
      bad(e.what());
    }
    bad("point is not valid for " + space.describe());
  }
  return p;
}

GridSpec parse_grid(const json& j) {
  const std::string kind = require(j, "kind", "grid").get<std::string>();
  if (kind == "lattice") {
    only_keys(j, {"kind", "lower", "upper", "count"}, "grid");
    return LatticeGrid{numbers(require(j, "lower", "grid"), "grid.lower"), numbers(require(j, "upper", "grid"), "grid.upper"),
                       j.contains("count") ? count(j.at("count"), "grid.count") : 11};
  }
  if (kind == "simplex") {
    only_keys(j, {"kind", "denominator"}, "grid");
    return SimplexGrid{j.contains("denominator") ? count(j.at("denominator"), "grid.denominator") : 10};
  }
  if (kind == "radial") {
    only_keys(j, {"kind", "radius_cap", "radial", "angular"}, "grid");
    RadialGrid g;
    if (j.contains("radius_cap")) g.radius_cap = number(j.at("radius_cap"), "grid.radius_cap");
    if (j.contains("radial")) g.radial = count(j.at("radial"), "grid.radial");
    if (j.contains("angular")) g.angular = count(j.at("angular"), "grid.angular");
    return g;
  }
  if (kind == "tree") {
    only_keys(j, {"kind", "subdivisions"}, "grid");
    return TreeGrid{j.contains("subdivisions") ? count(j.at("subdivisions"), "grid.subdivisions") : 8};
  }
  bad("grid.kind: expected lattice, simplex, radial or tree");
}

Schedule parse_schedule(const json& j) {
  const std::string kind = require(j, "kind", "schedule").get<std::string>();
  try {
    if (kind == "constant") {
      only_keys(j, {"kind", "lambda"}, "schedule");
      return Schedule::constant(j.contains("lambda") ? number(j.at("lambda"), "schedule.lambda") : 1.0);
    }
    if (kind == "power") {
      only_keys(j, {"kind", "c", "p"}, "schedule");
      return Schedule::power(j.contains("c") ? number(j.at("c"), "schedule.c") : 1.0,
                             j.contains("p") ? number(j.at("p"), "schedule.p") : 0.5);
    }
    if (kind == "list") {
      only_keys(j, {"kind", "values"}, "schedule");
      return Schedule::list(numbers(require(j, "values", "schedule"), "schedule.values"));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_config) throw;
    bad(std::string("schedule: ") + e.what());
  }
  bad("schedule.kind: expected constant, power or list");
}

GridSpec default_grid(const Space& space) {
  if (const auto* e = dynamic_cast<const EuclideanSpace*>(&space)) {
    if (std::holds_alternative<SimplexConstraint>(e->constraint())) return SimplexGrid{10};
    if (const auto* box = std::get_if<BoxConstraint>(&e->constraint())) return LatticeGrid{box->lower, box->upper, 11};
    double r = 1.0;
    if (const auto* ball = std::get_if<BallConstraint>(&e->constraint())) {
      // Largest cube inside the ball.
      r = ball->radius / std::sqrt(static_cast<double>(e->dim()));
    }
    return LatticeGrid{std::vector<double>(e->dim(), -r), std::vector<double>(e->dim(), r), 11};
  }
  if (space.kind() == SpaceKind::poincare) return RadialGrid{};
  return TreeGrid{};
}

ExperimentConfig parse_config(const json& j) {
  try {
    only_keys(j,
              {"problem", "initial_point", "schedule", "stop", "resolvent", "reference", "grids", "boundedness_cap",
               "seed", "output"},
              "config");
    ExperimentConfig cfg;
    const json& pj = require(j, "problem", "config");
    if (pj.is_string()) {
      cfg.problem = std::shared_ptr<const SaddleProblem>(&find_problem(pj.get<std::string>()), [](const SaddleProblem*) {});
    } else {
      cfg.problem = inline_problem(pj);
    }
    const ProductSpace& S = cfg.problem->space;
    if (j.contains("initial_point")) cfg.initial_point = parse_product_point(j.at("initial_point"), S, "initial_point");
    if (j.contains("reference")) cfg.reference = parse_product_point(j.at("reference"), S, "reference");
    if (j.contains("schedule")) cfg.schedule = parse_schedule(j.at("schedule"));
    if (j.contains("stop")) {
      const json& s = j.at("stop");
      only_keys(s, {"max_iter", "step_tol", "residual_tol"}, "stop");
      if (s.contains("max_iter")) cfg.stop.max_iter = static_cast<int>(count(s.at("max_iter"), "stop.max_iter"));
      if (s.contains("step_tol")) cfg.stop.step_tol = number(s.at("step_tol"), "stop.step_tol");
      if (s.contains("residual_tol")) cfg.stop.residual_tol = number(s.at("residual_tol"), "stop.residual_tol");
      if (cfg.stop.max_iter < 1) bad("stop.max_iter must be at least 1");
    }
    if (j.contains("resolvent")) {
      const json& r = j.at("resolvent");
      only_keys(r, {"inner_tol", "max_sweeps", "method"}, "resolvent");
      if (r.contains("inner_tol")) cfg.inner.inner_tol = number(r.at("inner_tol"), "resolvent.inner_tol");
      if (r.contains("max_sweeps")) cfg.inner.max_sweeps = static_cast<int>(count(r.at("max_sweeps"), "resolvent.max_sweeps"));
      if (r.contains("method")) {
        const std::string m = r.at("method").get<std::string>();
        if (m == "auto") cfg.inner.method = ResolventMethod::automatic;
        else if (m == "closed_form") cfg.inner.method = ResolventMethod::closed_form;
        else if (m == "alternating") cfg.inner.method = ResolventMethod::alternating;
        else bad("resolvent.method: expected auto, closed_form or alternating");
      }
      if (!(cfg.inner.inner_tol > 0.0) || cfg.inner.max_sweeps < 1) bad("resolvent: inner_tol > 0 and max_sweeps >= 1 required");
    }
    if (j.contains("grids")) {
      const json& g = j.at("grids");
      only_keys(g, {"x", "y"}, "grids");
      cfg.grid_x = parse_grid(require(g, "x", "grids"));
      cfg.grid_y = parse_grid(require(g, "y", "grids"));
    }
    if (j.contains("boundedness_cap")) cfg.boundedness_cap = number(j.at("boundedness_cap"), "boundedness_cap");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) {
      const json& o = j.at("output");
      only_keys(o, {"trace", "summary", "report"}, "output");
      if (o.contains("trace")) cfg.output.trace = o.at("trace").get<std::string>();
      if (o.contains("summary")) cfg.output.summary = o.at("summary").get<std::string>();
      if (o.contains("report")) cfg.output.report = o.at("report").get<std::string>();
    }
    return cfg;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_config) throw;
    bad(e.what());
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json point_json(const Point& p) { return json(p.coords); }

json product_point_json(const ProductPoint& z) {
  json j = json::object();
  j["x"] = point_json(z.x);
  j["y"] = point_json(z.y);
  return j;
}

}  // namespace gm
