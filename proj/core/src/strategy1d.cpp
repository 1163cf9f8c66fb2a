#include "tseek/strategy1d.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "tseek/error.hpp"

namespace tseek {

void StrategySpec1D::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidSpec, "slope s must be positive");
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) throw Error(ErrorCode::InvalidSpec, "eps0 must be positive");
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidSpec, "budget must be positive");
  if (!(s > 2.0 / 9.0 && s < 4.0 / 9.0)) {
    if (!allow_any_slope) {
      throw Error(ErrorCode::InvalidSpec, "slope s must lie in (2/9, 4/9) for the ratio guarantee");
    }
    std::clog << "warning: slope " << s << " is outside (2/9, 4/9); the ratio bound does not apply\n";
  }
}

// ---------------------------------------------------------------------------
// ProjectedPath

ProjectedPath::ProjectedPath(double s, double eps0)
    : s_(s), i0_(static_cast<int>(std::ceil(std::log2(eps0)))) {
  if (!(s > 0.0) || !(eps0 > 0.0)) throw Error(ErrorCode::InvalidSpec, "guide path needs s > 0 and eps0 > 0");
}

double ProjectedPath::domain_lo(int i) const {
  return is_right(i) ? -std::ldexp(1.0, i - 2) : -std::ldexp(1.0, i - 1);
}

double ProjectedPath::domain_hi(int i) const {
  return is_right(i) ? std::ldexp(1.0, i - 1) : std::ldexp(1.0, i - 2);
}

double ProjectedPath::height(int i, double x) const {
  const double base = std::ldexp(1.0, i);
  return is_right(i) ? s_ * (base + x) : s_ * (base - x);
}

Point2 ProjectedPath::point(int i, double x) const {
  const double tol = kEpsGeom * std::ldexp(1.0, i);
  if (x < domain_lo(i) - tol || x > domain_hi(i) + tol) {
    throw Error(ErrorCode::OutOfDomain, "x outside the domain of guide segment " + std::to_string(i));
  }
  return {x, height(i, x)};
}

std::pair<int, int> ProjectedPath::segments_in_height_range(double y_lo, double y_hi) const {
  // Segment i spans heights [0.75 s 2^i, 1.5 s 2^i].
  int lo = i0_;
  if (y_lo > 0.0) lo = std::max(i0_, static_cast<int>(std::floor(std::log2(y_lo / (1.5 * s_)))) - 1);
  int hi = i0_;
  if (y_hi > 0.0) hi = std::max(i0_, static_cast<int>(std::ceil(std::log2(y_hi / (0.75 * s_)))) + 1);
  return {lo, hi};
}

std::optional<int> ProjectedPath::segment_through(Point2 p) const {
  const auto [lo, hi] = segments_in_height_range(p.y, p.y);
  for (int i = lo; i <= hi; ++i) {
    const double tol = kEpsGeom * std::max(1.0, std::ldexp(1.0, i));
    if (p.x < domain_lo(i) - tol || p.x > domain_hi(i) + tol) continue;
    if (std::abs(height(i, p.x) - p.y) <= tol) return i;
  }
  return std::nullopt;
}

Polyline2 ProjectedPath::polyline(int last) const {
  Polyline2 out(Point2{0.0, 0.0});
  out.push_back({0.0, height(i0_, 0.0)});
  for (int i = i0_; i <= last; ++i) out.push_back(turning_point(i));
  return out;
}

Point2 projected_point(const ProjectedPath& pp, int i, double x) { return pp.point(i, x); }

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Start: return "start";
    case EventKind::FollowPi: return "follow_pi";
    case EventKind::ClimbTerrain: return "climb_terrain";
    case EventKind::DiagonalDeviation: return "diagonal";
    case EventKind::TurnAtPiPoint: return "turn_at_pi_point";
    case EventKind::TurnAtPiTurningPoint: return "turn_at_pi_turning_point";
    case EventKind::Stop: return "stop";
  }
  return "unknown";
}

double tau_star(const StrategySpec1D& spec, double y) {
  return y * std::sqrt(1.0 + spec.s * spec.s) / spec.s;
}

// ---------------------------------------------------------------------------
// Ray crossing

std::optional<double> ray_crossing_param(Point2 a, Point2 b, const VisRay& ray) {
  const double oa = ray.signed_offset(a);
  const double ob = ray.signed_offset(b);
  const Point2 anc = ray.anchor();
  const double tol = kEpsGeom * std::max({1.0, norm(a), norm(b), norm(anc)});
  if (!(ob > tol) || oa > tol) return std::nullopt;
  const double u = oa >= 0.0 ? 0.0 : -oa / (ob - oa);
  const Point2 q = lerp(a, b, u);
  if (ray.projection(q) < -tol) return std::nullopt;
  return u;
}

RayCrossing cross_ray(const Polyline2& path, const VisRay& ray) {
  const auto& v = path.vertices();
  const auto& cum = path.cumulative_length();
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (auto u = ray_crossing_param(v[k], v[k + 1], ray)) {
      const Point2 q = lerp(v[k], v[k + 1], *u);
      return {q, cum[k] + distance(v[k], q)};
    }
  }
  throw Error(ErrorCode::NeverCrosses, "path does not cross the visibility ray");
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

// Receives the moves of the simulator and applies the stop condition.
class Assembler {
 public:
  Assembler(const Terrain1D& terrain, const StopCondition& stop, double budget, bool record_only = false)
      : terrain_(terrain), stop_(stop), budget_(budget), record_only_(record_only) {
    path_.polyline.push_back({0.0, 0.0});
    mark(EventKind::Start, 0);
    if (!record_only_) {
      if (const auto* tgt = std::get_if<StopCondition::Target>(&stop_.kind())) {
        if (terrain_.segment_clear({0.0, 0.0}, tgt->t)) finish({0.0, 0.0});
      }
    }
  }

  bool stopped() const { return path_.stopped; }
  Point2 position() const { return path_.polyline.back(); }
  double length() const { return path_.polyline.length(); }
  SearchPath1D& path() { return path_; }

  void mark(EventKind kind, int segment) {
    if (path_.stopped) return;
    path_.events.push_back({kind, segment, path_.polyline.size() - 1});
  }

  // Returns true once the stop condition has fired.
  bool move_to(Point2 p) {
    if (path_.stopped) return true;
    const Point2 a = path_.polyline.back();
    const double piece = distance(a, p);
    if (piece <= 0.0) return false;

    if (!record_only_) {
      std::optional<double> u;
      if (const auto* r = std::get_if<StopCondition::Ray>(&stop_.kind())) {
        u = ray_crossing_param(a, p, r->ray);
      } else if (const auto* t = std::get_if<StopCondition::Target>(&stop_.kind())) {
        u = first_visible_param(terrain_, a, p, t->t);
      } else if (const auto* l = std::get_if<StopCondition::Length>(&stop_.kind())) {
        if (length() + piece >= l->length) u = (l->length - length()) / piece;
      }
      if (u && length() + *u * piece <= budget_) {
        const Point2 q = lerp(a, p, *u);
        if (distance(a, q) > 0.0) path_.polyline.push_back(q);
        finish(q);
        return true;
      }
    }
    if (length() + piece > budget_) {
      if (record_only_ || std::holds_alternative<StopCondition::Length>(stop_.kind())) {
        const Point2 q = lerp(a, p, (budget_ - length()) / piece);
        path_.polyline.push_back(q);
        finish(q);
        return true;
      }
      throw Error(ErrorCode::BudgetExceeded, "stop condition not met within the length budget");
    }
    path_.polyline.push_back(p);
    return false;
  }

 private:
  void finish(Point2 q) {
    mark(EventKind::Stop, 0);
    path_.stopped = true;
    path_.p_t = q;
    path_.tau = path_.polyline.length();
  }

  const Terrain1D& terrain_;
  const StopCondition& stop_;
  double budget_;
  bool record_only_;
  SearchPath1D path_;
};

enum class Mode { OnGuide, OnTerrain, Diagonal };

class Simulator {
 public:
  Simulator(const Terrain1D& terrain, const StrategySpec1D& spec, ProbeLog* probes)
      : terrain_(terrain), guide_(spec.s, spec.eps0), s_(spec.s), probes_(probes) {}

  // The stub up to the lowest realized guide point.
  void begin(Assembler& out) {
    segment_ = guide_.first_index();
    dir_ = ProjectedPath::direction(segment_);
    mode_ = Mode::OnGuide;
    out.move_to({0.0, guide_.height(segment_, 0.0)});
    out.mark(EventKind::FollowPi, segment_);
  }

  // One mode step. Returns false when the assembler stopped.
  bool step(Assembler& out) {
    if (++steps_ > kMaxSteps) throw Error(ErrorCode::BudgetExceeded, "simulation step limit reached");
    switch (mode_) {
      case Mode::OnGuide: return step_on_guide(out);
      case Mode::OnTerrain: return step_on_terrain(out);
      case Mode::Diagonal: return step_diagonal(out);
    }
    return false;
  }

 private:
  static constexpr long kMaxSteps = 2'000'000;

  double len_tol(Point2 p) const { return kEpsGeom * std::max({1.0, std::abs(p.x), std::abs(p.y)}); }

  void probe(double x0, double x1) const {
    if (probes_) probes_->push_back({std::min(x0, x1), std::max(x0, x1)});
  }

  // First parameter along from->to (non-vertical) where the terrain rises
  // strictly above the segment.
  std::optional<double> obstruction(Point2 from, Point2 to) const {
    const double dx = to.x - from.x;
    if (dx == 0.0) return std::nullopt;
    const double slope = (to.y - from.y) / dx;
    auto gap = [&](double x) { return terrain_.height_at(x) - (from.y + (x - from.x) * slope); };

    std::vector<double> xs{from.x};
    const auto between = terrain_.vertices_between(std::min(from.x, to.x), std::max(from.x, to.x));
    if (dx > 0) {
      for (const auto& v : between) xs.push_back(v.x);
    } else {
      for (auto it = between.rbegin(); it != between.rend(); ++it) xs.push_back(it->x);
    }
    xs.push_back(to.x);

    double f_prev = gap(xs[0]);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      const double f_next = gap(xs[k + 1]);
      const double tol = terrain_.height_tolerance({xs[k + 1], terrain_.height_at(xs[k + 1])});
      if (f_next > tol) {
        double xe = xs[k];
        if (f_prev < -tol) xe = xs[k] + (xs[k + 1] - xs[k]) * (-f_prev) / (f_next - f_prev);
        probe(from.x, xe);
        return (xe - from.x) / dx;
      }
      f_prev = f_next;
    }
    probe(from.x, to.x);
    return std::nullopt;
  }

  struct GuideHit {
    double u;
    int segment;
  };

  // Guide-path points met along from->to, excluding the start, ordered by u.
  std::vector<GuideHit> guide_hits(Point2 from, Point2 to) const {
    std::vector<GuideHit> hits;
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) return hits;
    const double u_min = len_tol(from) / len;
    const auto [lo, hi] = guide_.segments_in_height_range(std::min(from.y, to.y), std::max(from.y, to.y));
    for (int j = lo; j <= hi; ++j) {
      const double sigma = ProjectedPath::is_right(j) ? 1.0 : -1.0;
      const double denom = dy - s_ * sigma * dx;
      const double rhs = s_ * std::ldexp(1.0, j) + s_ * sigma * from.x - from.y;
      if (std::abs(denom) <= 1e-12 * (std::abs(dy) + s_ * std::abs(dx))) continue;
      const double u = rhs / denom;
      if (u <= u_min || u > 1.0 + 1e-12) continue;
      const double x = from.x + u * dx;
      const double tol = kEpsGeom * std::max(1.0, std::ldexp(1.0, j));
      if (x < guide_.domain_lo(j) - tol || x > guide_.domain_hi(j) + tol) continue;
      hits.push_back({std::min(u, 1.0), j});
    }
    std::sort(hits.begin(), hits.end(), [](const GuideHit& a, const GuideHit& b) {
      return a.u < b.u || (a.u == b.u && a.segment > b.segment);
    });
    return hits;
  }

  // Segment to follow after landing on guide segment j at p, or empty when
  // following it would immediately run into the terrain.
  std::optional<int> adoptable(Point2 p, int j) const {
    if (distance(p, guide_.turning_point(j)) <= len_tol(p)) ++j;
    const double ground = terrain_.height_at(p.x);
    probe(p.x, p.x);
    const bool touching = p.y - ground <= terrain_.height_tolerance(p);
    if (touching && terrain_.forward_slope(p.x, ProjectedPath::direction(j)) > s_) return std::nullopt;
    return j;
  }

  void adopt(Assembler& out, int j) {
    const int new_dir = ProjectedPath::direction(j);
    out.mark(new_dir != dir_ ? EventKind::TurnAtPiPoint : EventKind::FollowPi, j);
    segment_ = j;
    dir_ = new_dir;
    mode_ = Mode::OnGuide;
  }

  bool step_on_guide(Assembler& out) {
    const Point2 pos = out.position();
    const Point2 end = guide_.turning_point(segment_);
    if (distance(pos, end) > len_tol(pos)) {
      if (const auto u = obstruction(pos, end)) {
        const Point2 e = lerp(pos, end, *u);
        if (out.move_to(e)) return false;
        out.mark(EventKind::ClimbTerrain, segment_);
        mode_ = Mode::OnTerrain;
        return true;
      }
      if (out.move_to(end)) return false;
    }
    ++segment_;
    dir_ = ProjectedPath::direction(segment_);
    out.mark(EventKind::TurnAtPiTurningPoint, segment_);
    return true;
  }

  bool step_on_terrain(Assembler& out) {
    const Point2 pos = out.position();
    const double slope = terrain_.forward_slope(pos.x, dir_);
    probe(pos.x, pos.x);
    if (!(slope > s_)) {
      out.mark(EventKind::DiagonalDeviation, segment_);
      mode_ = Mode::Diagonal;
      return true;
    }
    // Climb the current edge up to its far vertex.
    const auto verts = terrain_.vertices();
    Point2 next;
    if (dir_ > 0) {
      auto it = std::upper_bound(verts.begin(), verts.end(), pos.x + len_tol(pos),
                                 [](double x, const Point2& p) { return x < p.x; });
      next = *it;
    } else {
      auto it = std::lower_bound(verts.begin(), verts.end(), pos.x - len_tol(pos),
                                 [](const Point2& p, double x) { return p.x < x; });
      next = *(it - 1);
    }
    probe(pos.x, next.x);
    for (const auto& hit : guide_hits(pos, next)) {
      const Point2 h = lerp(pos, next, hit.u);
      if (const auto j = adoptable(h, hit.segment)) {
        if (out.move_to(h)) return false;
        adopt(out, *j);
        return true;
      }
    }
    return !out.move_to(next);
  }

  bool step_diagonal(Assembler& out) {
    const Point2 pos = out.position();
    // Long enough to exceed any remaining budget.
    const double reach = std::max(1.0, 4.0 * (std::abs(pos.x) + pos.y) + 16.0);
    const Point2 far{pos.x + dir_ * reach, pos.y + s_ * reach};

    std::optional<GuideHit> rejoin;
    for (const auto& hit : guide_hits(pos, far)) {
      if (adoptable(lerp(pos, far, hit.u), hit.segment)) {
        rejoin = hit;
        break;
      }
    }
    const Point2 limit = rejoin ? lerp(pos, far, rejoin->u) : far;
    if (const auto u = obstruction(pos, limit)) {
      const Point2 e = lerp(pos, limit, *u);
      if (out.move_to(e)) return false;
      out.mark(EventKind::ClimbTerrain, segment_);
      mode_ = Mode::OnTerrain;
      return true;
    }
    if (out.move_to(limit)) return false;
    if (rejoin) adopt(out, *adoptable(limit, rejoin->segment));
    return true;
  }

  const Terrain1D& terrain_;
  ProjectedPath guide_;
  double s_;
  ProbeLog* probes_;
  int segment_ = 0;
  int dir_ = 1;
  Mode mode_ = Mode::OnGuide;
  long steps_ = 0;
};

// Last point of the recorded path on the vertical x = 0 at height <= 1, as
// (piece index, point). Piece k runs from vertex k to k + 1.
std::pair<std::size_t, Point2> practical_entry(const Polyline2& path) {
  const auto& v = path.vertices();
  std::pair<std::size_t, Point2> best{0, v.front()};
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const Point2 a = v[k];
    const Point2 b = v[k + 1];
    if (a.x == 0.0 && b.x == 0.0) {
      const Point2 top = a.y > b.y ? a : b;
      if (top.y <= 1.0) best = {k, top};
      else if (std::min(a.y, b.y) <= 1.0) best = {k, {0.0, 1.0}};
      continue;
    }
    if ((a.x <= 0.0 && b.x >= 0.0) || (a.x >= 0.0 && b.x <= 0.0)) {
      const double u = a.x == b.x ? 0.0 : -a.x / (b.x - a.x);
      const Point2 q{0.0, a.y + u * (b.y - a.y)};
      if (q.y <= 1.0) best = {k, q};
    }
  }
  return best;
}

}  // namespace

SearchPath1D build_search_path(const Terrain1D& terrain, const StrategySpec1D& spec,
                               const StopCondition& stop, ProbeLog* probes) {
  spec.validate();
  Simulator sim(terrain, spec, probes);

  if (!spec.practical_start) {
    Assembler out(terrain, stop, spec.budget);
    if (!out.stopped()) {
      sim.begin(out);
      while (!out.stopped() && sim.step(out)) {
      }
    }
    out.path().total_length = out.path().polyline.length();
    return std::move(out.path());
  }

  // Record the guide-following path until it is above height 1, then restart
  // with a vertical ascent to its last crossing of x = 0 below that height.
  Assembler rec(terrain, stop, spec.budget, /*record_only=*/true);
  sim.begin(rec);
  while (rec.position().y <= 1.0 && !rec.stopped() && sim.step(rec)) {
  }
  const SearchPath1D& recorded = rec.path();
  const auto [piece, entry] = practical_entry(recorded.polyline);

  Assembler out(terrain, stop, spec.budget);
  if (!out.stopped() && !out.move_to(entry)) {
    out.mark(EventKind::FollowPi, 0);
    const auto& v = recorded.polyline.vertices();
    bool done = false;
    for (std::size_t k = piece + 1; k < v.size() && !done; ++k) {
      done = out.move_to(v[k]);
      if (!done) {
        for (const auto& ev : recorded.events) {
          if (ev.vertex == k && ev.kind != EventKind::Start && ev.kind != EventKind::Stop) {
            out.mark(ev.kind, ev.pi_segment);
          }
        }
      }
    }
    if (!done && !recorded.stopped) {
      while (!out.stopped() && sim.step(out)) {
      }
    }
    if (!out.stopped() && recorded.stopped) {
      throw Error(ErrorCode::BudgetExceeded, "stop condition not met within the length budget");
    }
  }
  out.path().total_length = out.path().polyline.length();
  return std::move(out.path());
}

}  // namespace tseek
