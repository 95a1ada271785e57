#include "mforge/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "mforge/axioms.hpp"
#include "mforge/elation.hpp"
#include "mforge/errors.hpp"
#include "mforge/frames.hpp"
#include "mforge/geometry_io.hpp"
#include "mforge/h3.hpp"
#include "mforge/oracle.hpp"
#include "mforge/verifier.hpp"

namespace mforge {

using Reports = std::vector<VerificationReport>;
using nlohmann::json;

nlohmann::json RunConfig::to_json() const {
  return {{"space", space}, {"q", q}, {"suite", suite}, {"seed", seed}, {"cap", cap}, {"samples", samples},
          {"roots", roots}, {"full", full}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "gq-elations", "extensions", "moufang", "corollaries", "h3", "all"};
  return names;
}

void validate_config(const RunConfig& c) {
  if (c.space != "w5" && c.space != "q6") throw PreconditionError("space must be w5 or q6: " + c.space);
  if (c.q != 2 && c.q != 3 && c.q != 5) throw PreconditionError("q must be 2, 3 or 5", {c.q});
  if (std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end()) {
    throw PreconditionError("unknown suite: " + c.suite);
  }
  if (c.cap == 0 || c.samples <= 0 || c.roots <= 0 || c.jobs < 0) throw PreconditionError("caps must be positive");
  if (c.format != "text" && c.format != "json") throw PreconditionError("format must be text or json");
}

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - t_).count();
    t_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

std::string pad(long v, int w = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*ld", w, v);
  return buf;
}

int worker_count(const RunConfig& cfg) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return cfg.jobs > 0 ? cfg.jobs : std::max(1, hw);
}

// Runs fn(k) for k < n on a worker pool; results kept in index order.
void parallel_reports(int n, const RunConfig& cfg, ReportSink& sink, const std::function<Reports(int)>& fn) {
  std::vector<Reports> out(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < n; k = next++) out[k] = fn(k);
  };
  const int w = std::min(worker_count(cfg), std::max(1, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& r : out) sink.add_block(std::move(r));
  sink.flush();
}

VerificationReport error_report(const std::string& claim, const std::string& instance, const Error& e,
                                std::vector<int> fallback) {
  return make_report(claim, instance, false, e.witness().empty() ? std::move(fallback) : e.witness(), json::object(),
                     e.what());
}

VerificationReport timed(Stopwatch& sw, VerificationReport r) {
  r.wall_ms = sw.lap();
  return r;
}

std::vector<int> sample_indices(std::size_t total, std::size_t k, std::uint64_t seed) {
  std::vector<int> idx(total);
  for (std::size_t i = 0; i < total; ++i) idx[i] = static_cast<int>(i);
  if (k >= total) return idx;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// The residual quadrangle p⊥ ∩ b⊥ with p = 0 and b its lowest opposite point.
struct GQContext {
  GQView gq;
  std::vector<GQApartment> apartments;
  std::vector<GQRoot> roots;
};

GQContext make_gq_context(const PolarSpace& g) {
  int b = -1;
  for (int x = 0; x < g.num_points() && b < 0; ++x) {
    if (g.opposite(0, x)) b = x;
  }
  GQContext c{gq_from_opposite(g, 0, b), {}, {}};
  c.apartments = gq_apartments(c.gq.geom);
  c.roots = gq_roots(c.apartments, c.gq.geom);
  return c;
}

struct GQInstance {
  int root, apartment, u_t, j;  // j is j′ for the second kind
};

std::vector<GQInstance> gq_instances(const PolarSpace& g, const GQContext& c, int root) {
  std::vector<GQInstance> out;
  const GQRoot& r = c.roots[root];
  for (int ai : gq_apartments_containing(c.apartments, r)) {
    const auto D = gq_root_data(c.gq, r, c.apartments[ai]);
    if (r.kind == GQRootKind::First) {
      for (int ut : line_points_except(g, D.u, D.q, {D.q})) {
        for (int j : line_points_except(g, c.gq.p, D.q, {c.gq.p, D.q})) out.push_back({root, ai, ut, j});
      }
    } else {
      for (int ut : gq_common_neighbours(g, c.gq, D.q, D.n, D.d)) {
        for (int jp : line_points_except(g, c.gq.b, D.u, {c.gq.b, D.u})) out.push_back({root, ai, ut, jp});
      }
    }
  }
  return out;
}

std::string instance_label(const GQInstance& in) {
  return "root " + pad(in.root) + " apt " + pad(in.apartment) + " u' " + pad(in.u_t) + " j " + pad(in.j);
}

// Action and chain of the recipe for one instance.
struct BuiltGQ {
  Perm action;
  std::vector<int> bases;
  int n_t = -1;
};

BuiltGQ build_gq(const PolarSpace& g, const GQContext& c, const GQInstance& in) {
  const GQRoot& r = c.roots[in.root];
  const auto D = gq_root_data(c.gq, r, c.apartments[in.apartment]);
  if (r.kind == GQRootKind::First) {
    auto e = build_first_kind_gq_elation(g, c.gq, D.q, D.d, D.u, D.n, in.u_t, in.j);
    return {e.action, e.recipe.bases(), e.recipe.n_t};
  }
  auto e = build_second_kind_gq_elation(g, c.gq, D.d, D.q, D.u, D.n, in.u_t, in.j);
  return {e.action, e.recipe.bases(), -1};
}

bool line_fixed(const PolarSpace& g, const GQView& gq, const Perm& a, int x, int y) {
  for (int z : g.line_points(g.line_of(x, y))) {
    if (a[gq.local(z)] != gq.local(z)) return false;
  }
  return true;
}

bool lines_stable(const GQView& gq, const Perm& a, int x) {
  const auto& geom = gq.geom;
  for (int l : geom.point_lines[gq.local(x)]) {
    for (int z : geom.lines[l]) {
      if (!geom.line_contains(l, a[z])) return false;
    }
  }
  return true;
}

Reports check_gq_instance(const PolarSpace& g, const GQContext& c, const GQInstance& in) {
  Stopwatch sw;
  const GQRoot& r = c.roots[in.root];
  const bool first = r.kind == GQRootKind::First;
  const std::string claim = first ? "gq.first-kind" : "gq.second-kind";
  const std::string label = instance_label(in);
  const std::vector<int> ids{in.root, in.apartment, in.u_t, in.j};
  try {
    const auto D = gq_root_data(c.gq, r, c.apartments[in.apartment]);
    const BuiltGQ e = build_gq(g, c, in);
    const auto cert = certify_gq_root_elation(c.gq.geom, c.apartments, e.action, r);
    const auto& a = e.action;
    const auto& gq = c.gq;
    json counts = {{"elements_checked", cert.elements_checked}, {"apartments_checked", cert.apartments_checked}};
    std::string fail;
    if (!cert.pass) fail = "certify: " + cert.failure;
    if (first) {
      const int nu = g.line_of(D.n, D.u), ntut = g.line_of(e.n_t, in.u_t);
      bool maps_nu = ntut >= 0;
      for (int z : g.line_points(nu)) maps_nu = maps_nu && g.line_contains(ntut, gq.global(a[gq.local(z)]));
      if (fail.empty() && !line_fixed(g, gq, a, D.q, D.d)) fail = "qd not fixed pointwise";
      if (fail.empty() && !(lines_stable(gq, a, D.q) && lines_stable(gq, a, D.d))) fail = "line through q or d moved";
      if (fail.empty() && !maps_nu) fail = "nu not mapped to n'u'";
    } else {
      if (fail.empty() && !(line_fixed(g, gq, a, D.d, D.q) && line_fixed(g, gq, a, D.d, D.n))) fail = "dq or dn not fixed pointwise";
      if (fail.empty() && !lines_stable(gq, a, D.d)) fail = "line through d moved";
      if (fail.empty() && a[gq.local(D.u)] != gq.local(in.u_t)) fail = "u not mapped to u'";
    }
    if (fail.empty() && in.u_t == D.u && !is_identity(a)) fail = "identity target gives a nontrivial map";
    counts["identity"] = is_identity(a);
    return {timed(sw, make_report(claim, label, fail.empty(), ids, counts, fail))};
  } catch (const Error& e) {
    return {timed(sw, error_report(claim, label, e, ids))};
  }
}

std::vector<GQInstance> selected_instances(const PolarSpace& g, const GQContext& c, const RunConfig& cfg,
                                           GQRootKind kind, std::uint64_t salt) {
  std::vector<GQInstance> all;
  for (int k = 0; k < static_cast<int>(c.roots.size()); ++k) {
    if (c.roots[k].kind != kind) continue;
    for (const auto& in : gq_instances(g, c, k)) all.push_back(in);
  }
  if (g.q() == 2 || cfg.full) return all;
  std::vector<GQInstance> out;
  for (int k : sample_indices(all.size(), cfg.samples, cfg.seed ^ salt)) out.push_back(all[k]);
  return out;
}

}  // namespace

void run_axioms_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink) {
  Reports out;
  const std::string inst = cfg.space + " q=" + std::to_string(g.q());
  Stopwatch sw;
  // Counts of a rank-3 polar space of type W(5,q) or Q(6,q).
  const long q = g.q();
  const long pts = (q * q * q * q * q * q - 1) / (q - 1);
  const long lines = pts * (q * q + 1);
  const long planes = (q + 1) * (q * q + 1) * (q * q * q + 1);
  const bool counts_ok = g.num_points() == pts && g.num_lines() == lines && g.num_planes() == planes;
  out.push_back(timed(sw, make_report("geometry.counts", inst, counts_ok, {g.num_points(), g.num_lines(), g.num_planes()},
                                      {{"points", g.num_points()}, {"lines", g.num_lines()}, {"planes", g.num_planes()},
                                       {"expected", {pts, lines, planes}}})));
  try {
    check_form_agreement(g);
    const auto st = axiom_check(g);
    out.push_back(timed(sw, make_report("geometry.axioms", inst, st.min_planes_per_line >= 2, {st.min_planes_per_line},
                                        {{"incidence_tests", st.incidence_tests},
                                         {"collinear_pairs", st.collinear_pairs},
                                         {"min_planes_per_line", st.min_planes_per_line}},
                                        st.min_planes_per_line >= 2 ? "" : "thin line")));
  } catch (const Error& e) {
    out.push_back(timed(sw, error_report("geometry.axioms", inst, e, {0})));
  }
  const std::string doc = geometry_to_json(g);
  bool same = false;
  try {
    same = geometry_to_json(geometry_from_json(doc)) == doc;
  } catch (const Error&) {
  }
  out.push_back(timed(sw, make_report("geometry.cache-roundtrip", inst, same, {0}, {{"bytes", doc.size()}})));

  const GQContext c = make_gq_context(g);
  const long gq_pts = (q + 1) * (q * q + 1);
  // Apartments of GQ(q,q): ordered 4-cycles up to rotation and reflection.
  const long gq_aps = gq_pts * q * (q + 1) * q * q * q / 8;
  // Each apartment carries four roots of each kind and every root lies in q apartments.
  const long gq_roots_expected = gq_aps * 8 / q;
  const bool gq_ok = c.gq.geom.is_gq() && c.gq.num_points() == gq_pts &&
                     static_cast<long>(c.apartments.size()) == gq_aps &&
                     static_cast<long>(c.roots.size()) == gq_roots_expected;
  out.push_back(timed(sw, make_report("geometry.residual-quadrangle", inst, gq_ok,
                                      {c.gq.num_points(), static_cast<int>(c.apartments.size())},
                                      {{"points", c.gq.num_points()}, {"lines", c.gq.num_lines()},
                                       {"apartments", c.apartments.size()}, {"roots", c.roots.size()},
                                       {"expected_apartments", gq_aps}, {"expected_roots", gq_roots_expected}})));
  sink.add_block(std::move(out));
  sink.flush();
}

void run_gq_elations_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink) {
  const GQContext c = make_gq_context(g);
  for (auto kind : {GQRootKind::First, GQRootKind::Second}) {
    const auto inst = selected_instances(g, c, cfg, kind, kind == GQRootKind::First ? 0x11 : 0x22);
    parallel_reports(static_cast<int>(inst.size()), cfg, sink, [&](int k) { return check_gq_instance(g, c, inst[k]); });
  }

  // Variant A needs two points of uq other than u and q.
  std::vector<std::array<int, 6>> va;  // root, apt, v, v', j, unused
  std::vector<std::array<int, 5>> vb;  // root, apt, j, l, unused
  for (int k = 0; k < static_cast<int>(c.roots.size()); ++k) {
    if (c.roots[k].kind != GQRootKind::First) continue;
    for (int ai : gq_apartments_containing(c.apartments, c.roots[k])) {
      const auto D = gq_root_data(c.gq, c.roots[k], c.apartments[ai]);
      const auto vs = line_points_except(g, D.u, D.q, {D.u, D.q});
      const auto js = line_points_except(g, c.gq.p, D.q, {c.gq.p, D.q});
      for (int v : vs) {
        for (int vt : vs) {
          if (v == vt) continue;
          for (int j : js) va.push_back({k, ai, v, vt, j, 0});
        }
      }
      for (int j : js) {
        for (int l : line_points_except(g, c.gq.b, D.q, {D.q})) vb.push_back({k, ai, j, l, 0});
      }
    }
  }
  if (va.empty()) {
    sink.add(skipped_report("gq.variant-a", "q=" + std::to_string(g.q()), "uq has no two points besides u and q"));
    sink.flush();
  } else {
    const auto pick = g.q() == 2 || cfg.full ? sample_indices(va.size(), va.size(), 0)
                                             : sample_indices(va.size(), cfg.samples, cfg.seed ^ 0x33);
    parallel_reports(static_cast<int>(pick.size()), cfg, sink, [&](int k) -> Reports {
      Stopwatch sw;
      const auto& x = va[pick[k]];
      const std::vector<int> ids{x[0], x[1], x[2], x[3], x[4]};
      const std::string label = "root " + pad(x[0]) + " apt " + pad(x[1]) + " v " + pad(x[2]) + " v' " + pad(x[3]) + " j " + pad(x[4]);
      try {
        const auto D = gq_root_data(c.gq, c.roots[x[0]], c.apartments[x[1]]);
        const auto r = observation_variant_a(g, c.gq, D.q, D.d, D.u, D.n, x[2], x[3], x[4]);
        const bool ok = r.moves_v && r.lines_through_q_stable && r.lines_through_n_stable;
        return {timed(sw, make_report("gq.variant-a", label, ok, ids,
                                      {{"moves_v", r.moves_v}, {"lines_q", r.lines_through_q_stable},
                                       {"lines_n", r.lines_through_n_stable}}))};
      } catch (const Error& e) {
        return {timed(sw, error_report("gq.variant-a", label, e, ids))};
      }
    });
  }

  // Variant B: explicit grids must give the identity.
  const auto pick = g.q() == 2 || cfg.full ? sample_indices(vb.size(), vb.size(), 0)
                                           : sample_indices(vb.size(), cfg.samples, cfg.seed ^ 0x44);
  auto run_b = [&](const std::array<int, 5>& x, const std::string& claim) -> VerificationReport {
    const std::vector<int> ids{x[0], x[1], x[2], x[3]};
    const std::string label = "root " + pad(x[0]) + " apt " + pad(x[1]) + " j " + pad(x[2]) + " l " + pad(x[3]);
    try {
      const auto D = gq_root_data(c.gq, c.roots[x[0]], c.apartments[x[1]]);
      const auto r = observation_variant_b(g, c.gq, D.q, D.d, D.u, D.n, x[2], x[3]);
      const bool ok = !r.grid || r.identity;
      return make_report(claim, label, ok, ids,
                         {{"grid", r.grid}, {"grid_lines", r.grid_lines}, {"identity", r.identity},
                          {"lines_q", r.fixes_planes_pq}, {"uq_fixed", r.fixes_lines_puq}, {"dq_fixed", r.fixes_lines_pdq}});
    } catch (const Error& e) {
      return error_report(claim, label, e, ids);
    }
  };
  parallel_reports(static_cast<int>(pick.size()), cfg, sink, [&](int k) -> Reports {
    Stopwatch sw;
    return {timed(sw, run_b(vb[pick[k]], "gq.variant-b"))};
  });
  // First explicit grid in instance order.
  Stopwatch sw;
  bool found = false;
  for (const auto& x : vb) {
    auto r = run_b(x, "gq.variant-b-grid");
    if (r.result == Outcome::Fail || r.counts.value("grid", false)) {
      sink.add(timed(sw, std::move(r)));
      found = true;
      break;
    }
  }
  if (!found && g.q() != 2) {
    auto r = skipped_report("gq.variant-b-grid", "q=" + std::to_string(g.q()), "vacuous: no grid among the instances");
    r.counts = {{"instances", vb.size()}};
    sink.add(timed(sw, std::move(r)));
  } else if (!found) {
    sink.add(timed(sw, make_report("gq.variant-b-grid", "q=" + std::to_string(g.q()), false, {static_cast<int>(vb.size())},
                                   {{"instances", vb.size()}}, "no grid among the instances")));
  }
  sink.flush();
}

namespace {

// Rank-3 roots drawn from seeded frames.
struct RootPick {
  int frame;
  Root root;
  std::string label;
};

std::vector<RootPick> pick_roots(const PolarSpace& g, const RunConfig& cfg, RootKind kind) {
  std::mt19937_64 rng(cfg.seed ^ (kind == RootKind::First ? 0x55 : 0x66));
  std::vector<RootPick> out;
  std::set<std::vector<int>> seen;
  const int n = g.num_points();
  for (int attempt = 0; static_cast<int>(out.size()) < cfg.roots && attempt < 50 * cfg.roots; ++attempt) {
    std::map<int, int> cons;
    const int a = static_cast<int>(rng() % n);
    std::vector<int> opp;
    for (int x = 0; x < n; ++x) {
      if (g.opposite(a, x)) opp.push_back(x);
    }
    cons[1] = a;
    cons[-1] = opp[rng() % opp.size()];
    PolarFrame f;
    try {
      f = frame_search(g, cons);
    } catch (const Error&) {
      continue;
    }
    const Apartment ap = apartment_from_frame(g, f);
    static const int idx[6] = {1, 2, 3, -1, -2, -3};
    Root r;
    std::string label;
    if (kind == RootKind::First) {
      int i = idx[rng() % 6], j = idx[rng() % 6];
      while (j == i || j == -i) j = idx[rng() % 6];
      r = root_of_apartment(ap, kind, i, j);
      label = "F(" + std::to_string(i) + "," + std::to_string(j) + ")";
    } else {
      const int i = idx[rng() % 6];
      r = root_of_apartment(ap, kind, i);
      label = "S(" + std::to_string(i) + ")";
    }
    std::vector<int> key{static_cast<int>(kind)};
    for (const auto& e : r.members) key.push_back(e.dim * 100000 + e.id);
    if (!seen.insert(key).second) continue;
    std::string frame;
    for (int p : f.pts) frame += (frame.empty() ? "" : ",") + std::to_string(p);
    out.push_back({static_cast<int>(out.size()), r, "frame " + pad(static_cast<int>(out.size()), 3) + " [" + frame + "] " + label});
  }
  return out;
}

int count_equal(const std::vector<Perm>& family, const Perm& p) {
  return static_cast<int>(std::count(family.begin(), family.end(), p));
}

Reports first_kind_root_reports(const PolarSpace& g, const RootPick& pick, std::size_t restriction_pairs,
                                std::size_t boundary_points) {
  Reports out;
  Stopwatch sw;
  const auto P = first_kind_params(g, pick.root);
  const auto oracle = pointwise_stabilizer_oracle(g, pick.root);
  const double oracle_ms = sw.lap();
  for (int mt : P.targets) {
    const std::string label = pick.label + " m' " + pad(mt);
    const std::vector<int> ids{P.d, P.q, P.m, mt};
    try {
      const EtaMap eta = build_eta(g, P.d, P.q, P.m, mt);
      out.push_back(timed(sw, make_report("eta.copy-independence", label, eta.star_mismatches == 0 && eta.back_mismatches == 0,
                                          eta.star_witness.empty() ? ids : eta.star_witness,
                                          {{"star_checks", eta.star_checks}, {"star_mismatches", eta.star_mismatches},
                                           {"back_checks", eta.back_checks}, {"back_mismatches", eta.back_mismatches},
                                           {"copies", eta.copies}})));
      const auto props = check_eta(g, eta);
      out.push_back(timed(sw, make_report("eta.properties", label, props.ok(), props.witness.empty() ? ids : props.witness,
                                          {{"planes", props.planes_checked}, {"pairs", props.pairs_checked}}, props.failure)));

      // Every plane through dq as the seed plane.
      int planes = 0, differ = -1;
      for (int pi : g.planes_on_line(g.line_of(P.d, P.q))) {
        ++planes;
        if (build_eta(g, P.d, P.q, P.m, mt, pi).image != eta.image && differ < 0) differ = pi;
      }
      out.push_back(timed(sw, make_report("eta.seed-plane-independence", label, differ < 0, {differ}, {{"planes", planes}})));

      // Boundary agreement and (p, b)-independence over every point off d⊥ ∪ q⊥.
      long pairs = 0, disagree = 0, compared = 0, differ_pb = 0;
      std::vector<int> wit;
      std::vector<int> xs;
      for (int x = 0; x < g.num_points(); ++x) {
        if (!g.collinear(x, P.d) && !g.collinear(x, P.q)) xs.push_back(x);
      }
      if (boundary_points > 0 && xs.size() > boundary_points) {
        std::vector<int> keep;
        for (int k : sample_indices(xs.size(), boundary_points, static_cast<std::uint64_t>(mt) * 7919 + P.m)) keep.push_back(xs[k]);
        xs = keep;
      }
      for (int x : xs) {
        int first = -1;
        for (auto [p, b] : host_pairs(g, P.d, P.q, x)) {
          const EtaPb e = eta_pb(g, eta, x, p, b);
          ++pairs;
          if (!e.boundary_agrees) {
            ++disagree;
            if (wit.empty()) wit = {x, p, b};
          }
          if (first < 0) first = e.image;
          else {
            ++compared;
            if (e.image != first) {
              ++differ_pb;
              if (wit.empty()) wit = {x, p, b};
            }
          }
        }
      }
      out.push_back(timed(sw, make_report("eta.boundary-agreement", label, disagree == 0, wit,
                                          {{"points", xs.size()}, {"pairs", pairs}, {"disagreements", disagree}})));
      out.push_back(timed(sw, make_report("eta.host-independence", label, differ_pb == 0, wit,
                                          {{"comparisons", compared}, {"discrepancies", differ_pb}})));

      int coherent = 0;
      std::string coh_fail;
      for (auto [p, b] : host_pairs(g, P.d, P.q, P.d)) {
        if (coherent >= 16) break;
        const auto cc = verify_copy_coherence(g, eta, p, b);
        if (!cc.pass) {
          coh_fail = cc.failure;
          break;
        }
        ++coherent;
      }
      out.push_back(timed(sw, make_report("eta.copy-coherence", label, coh_fail.empty() && coherent > 0, ids,
                                          {{"pairs", coherent}}, coh_fail)));

      FirstKindOptions opt;
      opt.all_host_pairs = true;
      const Extension ext = extend_first_kind(g, eta, opt);
      out.push_back(timed(sw, make_report("first-kind.well-defined", label, ext.mismatches == 0,
                                          ext.mismatch_witness.empty() ? ids : ext.mismatch_witness,
                                          {{"comparisons", ext.comparisons}, {"mismatches", ext.mismatches}})));
      const auto col = check_collineation(g, ext.perm);
      out.push_back(timed(sw, make_report("first-kind.collineation", label, col.ok(), col.witness,
                                          {{"lines", g.num_lines()}, {"planes", g.num_planes()}})));
      const auto cert = certify_root_elation(g, ext.perm, pick.root);
      out.push_back(timed(sw, make_report("first-kind.certify", label, col.ok() && cert.pass, cert.witness,
                                          {{"elements", cert.elements_checked}, {"apartments", cert.apartments_checked}},
                                          cert.failure)));
      out.push_back(timed(sw, make_report("first-kind.target", label, ext.perm[P.m] == mt, {P.m, ext.perm[P.m]})));
      const auto rs = verify_gq_restrictions(g, eta, ext.perm, restriction_pairs);
      out.push_back(timed(sw, make_report("first-kind.restriction", label, rs.pass, rs.witness, {{"pairs", rs.pairs}},
                                          rs.failure)));
      const auto fx = verify_fixpoint_corollary(g, ext.perm, pick.root);
      out.push_back(timed(sw, make_report("first-kind.fixpoint", label, fx.pass, fx.witness,
                                          {{"planes", fx.planes_checked}, {"lines", fx.lines_checked}}, fx.failure)));
      const Extension inv = extend_first_kind(g, P.d, P.q, mt, P.m);
      out.push_back(timed(sw, make_report("first-kind.inverse", label, is_identity(compose(ext.perm, inv.perm)), ids)));
      const int eq = count_equal(oracle, ext.perm);
      auto orc = make_report("first-kind.oracle-equality", label, eq == 1, ids,
                             {{"oracle_size", oracle.size()}, {"equal_members", eq}});
      orc.wall_ms = sw.lap() + oracle_ms / P.targets.size();
      out.push_back(orc);
    } catch (const Error& e) {
      out.push_back(timed(sw, error_report("first-kind.build", label, e, ids)));
    }
  }
  return out;
}

Reports second_kind_root_reports(const PolarSpace& g, const RootPick& pick) {
  Reports out;
  Stopwatch sw;
  const auto S = second_kind_params(g, pick.root);
  const auto oracle = pointwise_stabilizer_oracle(g, pick.root);
  const double oracle_ms = sw.lap();
  for (int pt : S.targets) {
    const std::string label = pick.label + " p' " + pad(pt);
    SecondKindConfig c = S.config;
    c.p_t = pt;
    const std::vector<int> ids{c.o, c.p, pt};
    try {
      const Extension ext = extend_second_kind(g, c);
      out.push_back(timed(sw, make_report("second-kind.well-defined", label, ext.mismatches == 0,
                                          ext.mismatch_witness.empty() ? ids : ext.mismatch_witness,
                                          {{"comparisons", ext.comparisons}, {"mismatches", ext.mismatches}})));
      const auto col = check_collineation(g, ext.perm);
      out.push_back(timed(sw, make_report("second-kind.collineation", label, col.ok(), col.witness)));
      int moved = -1;
      for (int pl : {c.alpha, c.beta}) {
        for (int x : g.plane_points(pl)) {
          if (ext.perm[x] != x && moved < 0) moved = x;
        }
      }
      out.push_back(timed(sw, make_report("second-kind.fixes-alpha-beta", label, moved < 0, {moved})));
      int unstable = -1, lines = 0;
      for (int l : g.lines_through(c.o)) {
        ++lines;
        if (image_element(g, ext.perm, {1, l}).id != l && unstable < 0) unstable = l;
      }
      out.push_back(timed(sw, make_report("second-kind.lines-through-o", label, unstable < 0, {unstable}, {{"lines", lines}})));
      out.push_back(timed(sw, make_report("second-kind.target", label, ext.perm[c.p] == pt, {c.p, ext.perm[c.p]})));
      const auto cert = certify_root_elation(g, ext.perm, pick.root);
      out.push_back(timed(sw, make_report("second-kind.certify", label, col.ok() && cert.pass, cert.witness,
                                          {{"elements", cert.elements_checked}, {"apartments", cert.apartments_checked}},
                                          cert.failure)));
      const auto fx = verify_fixpoint_corollary(g, ext.perm, pick.root);
      out.push_back(timed(sw, make_report("second-kind.fixpoint", label, fx.pass, fx.witness, {{"lines", fx.lines_checked}},
                                          fx.failure)));
      SecondKindConfig ci = c;
      ci.p = pt;
      ci.p_t = c.p;
      const Extension inv = extend_second_kind(g, ci);
      out.push_back(timed(sw, make_report("second-kind.inverse", label, is_identity(compose(ext.perm, inv.perm)), ids)));
      const int eq = count_equal(oracle, ext.perm);
      auto orc = make_report("second-kind.oracle-equality", label, eq == 1, ids,
                             {{"oracle_size", oracle.size()}, {"equal_members", eq}});
      orc.wall_ms = sw.lap() + oracle_ms / S.targets.size();
      out.push_back(orc);
    } catch (const Error& e) {
      out.push_back(timed(sw, error_report("second-kind.build", label, e, ids)));
    }
  }
  return out;
}

}  // namespace

void run_extensions_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink) {
  const auto firsts = pick_roots(g, cfg, RootKind::First);
  // Exhaustive at q = 2; restriction pairs and boundary points sampled above.
  const std::size_t pairs = g.q() == 2 || cfg.full ? 0 : 24;
  const std::size_t points = g.q() == 2 || cfg.full ? 0 : 16;
  parallel_reports(static_cast<int>(firsts.size()), cfg, sink,
                   [&](int k) { return first_kind_root_reports(g, firsts[k], pairs, points); });
  const auto seconds = pick_roots(g, cfg, RootKind::Second);
  parallel_reports(static_cast<int>(seconds.size()), cfg, sink,
                   [&](int k) { return second_kind_root_reports(g, seconds[k]); });
}

void run_moufang_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink) {
  const GQContext c = make_gq_context(g);
  parallel_reports(static_cast<int>(c.roots.size()), cfg, sink, [&](int k) -> Reports {
    Stopwatch sw;
    const std::string label = std::string(c.roots[k].kind == GQRootKind::First ? "first " : "second ") + "root " + pad(k);
    try {
      std::vector<Perm> gens;
      for (const auto& in : gq_instances(g, c, k)) gens.push_back(build_gq(g, c, in).action);
      const auto tr = gq_moufang_transitivity(c.gq.geom, c.apartments, c.roots[k], gens, cfg.cap);
      const bool ok = tr.pass && tr.apartments == tr.orbit_size;
      Reports out;
      out.push_back(timed(sw, make_report("gq.moufang", label, ok, {k, tr.apartments, tr.orbit_size},
                                          {{"apartments", tr.apartments}, {"orbit", tr.orbit_size},
                                           {"group_order", tr.group_order}, {"generators", gens.size()}},
                                          tr.failure)));
      // The generated group is the whole root group found by the oracle.
      auto group = group_closure(gens, c.gq.num_points(), cfg.cap);
      auto oracle = gq_root_elation_oracle(c.gq.geom, c.apartments, c.roots[k]);
      std::sort(group.begin(), group.end());
      std::sort(oracle.begin(), oracle.end());
      out.push_back(timed(sw, make_report("gq.root-group", label, group == oracle && oracle.size() == std::size_t(g.q()),
                                          {k, static_cast<int>(group.size()), static_cast<int>(oracle.size())},
                                          {{"generated", group.size()}, {"oracle", oracle.size()}})));
      return out;
    } catch (const Error& e) {
      return {timed(sw, error_report("gq.moufang", label, e, {k}))};
    }
  });

  // Rank 3: every root of one apartment plus seeded roots.
  RunConfig rc = cfg;
  rc.roots = std::max(4, cfg.roots / 2);
  std::vector<RootPick> picks;
  const Apartment ap = apartment_from_frame(g, frame_search(g, {}));
  static const int idx[6] = {1, 2, 3, -1, -2, -3};
  for (int a : idx) {
    for (int b : idx) {
      if (a == b || a == -b || frame_slot(a) > frame_slot(b)) continue;
      picks.push_back({0, root_of_apartment(ap, RootKind::First, a, b),
                       "frame 000 F(" + std::to_string(a) + "," + std::to_string(b) + ")"});
    }
    picks.push_back({0, root_of_apartment(ap, RootKind::Second, a), "frame 000 S(" + std::to_string(a) + ")"});
  }
  for (auto kind : {RootKind::First, RootKind::Second}) {
    for (auto& p : pick_roots(g, rc, kind)) picks.push_back(p);
  }
  parallel_reports(static_cast<int>(picks.size()), cfg, sink, [&](int k) -> Reports {
    Stopwatch sw;
    const auto& pk = picks[k];
    const std::string label = (k < 18 ? "fixed " : "seeded ") + pk.label;
    try {
      std::vector<Perm> gens;
      if (pk.root.kind == RootKind::First) {
        const auto P = first_kind_params(g, pk.root);
        for (int mt : P.targets) gens.push_back(extend_first_kind(g, P.d, P.q, P.m, mt).perm);
      } else {
        const auto S = second_kind_params(g, pk.root);
        for (int pt : S.targets) {
          auto cc = S.config;
          cc.p_t = pt;
          gens.push_back(extend_second_kind(g, cc).perm);
        }
      }
      const auto tr = moufang_transitivity(g, pk.root, gens, cfg.cap);
      const bool ok = tr.pass && tr.apartments == tr.orbit_size;
      return {timed(sw, make_report("polar.moufang", label, ok, {k, tr.apartments, tr.orbit_size},
                                    {{"apartments", tr.apartments}, {"orbit", tr.orbit_size},
                                     {"group_order", tr.group_order}},
                                    tr.failure))};
    } catch (const Error& e) {
      return {timed(sw, error_report("polar.moufang", label, e, {k}))};
    }
  });

  // Negative control: the identity alone cannot be transitive on two or more apartments.
  Reports neg;
  Stopwatch sw;
  const Perm id_gq = identity_perm(c.gq.num_points());
  for (int k : {0, static_cast<int>(c.roots.size()) - 1}) {
    const auto tr = gq_moufang_transitivity(c.gq.geom, c.apartments, c.roots[k], {id_gq}, cfg.cap);
    neg.push_back(timed(sw, make_report("negative.identity-generators", "gq root " + pad(k), !tr.pass && tr.apartments >= 2,
                                        {k}, {{"apartments", tr.apartments}, {"orbit", tr.orbit_size}})));
  }
  for (int k : {0, static_cast<int>(picks.size()) - 1}) {
    const auto tr = moufang_transitivity(g, picks[k].root, {identity_perm(g.num_points())}, cfg.cap);
    neg.push_back(timed(sw, make_report("negative.identity-generators", "polar " + picks[k].label,
                                        !tr.pass && tr.apartments >= 2, {k},
                                        {{"apartments", tr.apartments}, {"orbit", tr.orbit_size}})));
  }
  sink.add_block(std::move(neg));
  sink.flush();
}

void run_corollaries_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink) {
  const GQContext c = make_gq_context(g);
  // Chain certificates of every constructed GQ elation, grouped by root.
  parallel_reports(static_cast<int>(c.roots.size()), cfg, sink, [&](int k) -> Reports {
    Stopwatch sw;
    const std::string label = "root " + pad(k);
    auto inst = gq_instances(g, c, k);
    if (g.q() != 2 && !cfg.full) inst.resize(std::min<std::size_t>(inst.size(), 2));
    int checked = 0;
    for (const auto& in : inst) {
      try {
        const auto bases = build_gq(g, c, in).bases;
        const auto sp = verify_self_projectivity(g, bases);
        if (!sp.pass || bases.size() != 5) {
          return {timed(sw, make_report("projectivity.chains", label, false, bases, {{"checked", checked}}, sp.failure))};
        }
        ++checked;
      } catch (const Error& e) {
        return {timed(sw, error_report("projectivity.chains", label, e, {k, in.apartment, in.u_t, in.j}))};
      }
    }
    Reports out{timed(sw, make_report("projectivity.chains", label, checked > 0, {k}, {{"checked", checked}}))};
    const auto rr = realize_all_residual_elations(g, c.gq, c.apartments, c.roots[k]);
    out.push_back(timed(sw, make_report("projectivity.realize-all", label, rr.pass && rr.realized == rr.nontrivial,
                                        rr.witness.empty() ? std::vector<int>{k} : rr.witness,
                                        {{"nontrivial", rr.nontrivial}, {"realized", rr.realized},
                                         {"instances", rr.instances}, {"chains", rr.chains_checked}},
                                        rr.failure)));
    return out;
  });

  Reports out;
  Stopwatch sw;
  // Malformed chains.
  {
    const auto in = gq_instances(g, c, 0).front();
    auto bases = build_gq(g, c, in).bases;
    const std::vector<int> odd{bases[0], bases[1], bases[2], bases[0]};
    const auto r_odd = verify_self_projectivity(g, odd);
    out.push_back(timed(sw, make_report("projectivity.negative", "length 3", !r_odd.pass, odd, json::object(), r_odd.failure)));
    auto open = bases;
    open.back() = bases[2];
    const auto r_open = verify_self_projectivity(g, open);
    out.push_back(timed(sw, make_report("projectivity.negative", "open chain", !r_open.pass, open, json::object(), r_open.failure)));
  }

  // The corollary's extra fixing is stronger than pointwise stabilization of the inside.
  const Apartment ap = apartment_from_frame(g, frame_search(g, {}));
  const Root r1 = root_of_apartment(ap, RootKind::First, 1, 2);
  const Root r2 = root_of_apartment(ap, RootKind::Second, 1);
  for (const Root* r : {&r1, &r2}) {
    const auto relaxed = pointwise_stabilizer_oracle(g, *r, false);
    int violators = 0;
    for (const auto& p : relaxed) violators += verify_fixpoint_corollary(g, p, *r).pass ? 0 : 1;
    const std::string label = r == &r1 ? "F(1,2)" : "S(1)";
    out.push_back(timed(sw, make_report("fixpoint.strengthening", label, true, {},
                                        {{"relaxed_family", relaxed.size()}, {"violators", violators},
                                         {"vacuous", violators == 0}},
                                        violators == 0 ? "vacuous: every relaxed element satisfies the corollary"
                                                       : "corollary rejects relaxed elements")));
  }

  // Negative controls on an honest elation.
  const auto P = first_kind_params(g, r1);
  int mt = -1;
  for (int t : P.targets) {
    if (t != P.m) mt = t;
  }
  const Perm sigma = extend_first_kind(g, P.d, P.q, P.m, mt).perm;
  std::mt19937_64 rng(cfg.seed ^ 0x77);
  for (int trial = 0; trial < 8; ++trial) {
    Perm bad = sigma;
    const int a = static_cast<int>(rng() % g.num_points());
    int b = static_cast<int>(rng() % g.num_points());
    if (b == a) b = (a + 1) % g.num_points();
    std::swap(bad[a], bad[b]);
    const auto col = check_collineation(g, bad);
    out.push_back(timed(sw, make_report("negative.corrupted-permutation", "swap " + pad(a) + " " + pad(b), !col.ok(),
                                        {a, b}, {{"witness", col.witness}})));
  }
  const Root wrong = root_of_apartment(ap, RootKind::First, 1, 3);
  const auto cw = certify_root_elation(g, sigma, wrong);
  out.push_back(timed(sw, make_report("negative.wrong-root", "polar F(1,2) as F(1,3)", !cw.pass, {P.m, mt},
                                      {{"failure", cw.failure}})));
  const auto cw2 = certify_root_elation(g, sigma, r2);
  out.push_back(timed(sw, make_report("negative.wrong-root", "polar F(1,2) as S(1)", !cw2.pass, {P.m, mt},
                                      {{"failure", cw2.failure}})));
  // A GQ root whose path has a point moved by the elation.
  for (int k = 0; k < static_cast<int>(c.roots.size()); ++k) {
    Perm a;
    for (const auto& in : gq_instances(g, c, k)) {
      a = build_gq(g, c, in).action;
      if (!is_identity(a)) break;
    }
    if (a.empty() || is_identity(a)) continue;
    int other = -1;
    for (int m = 0; m < static_cast<int>(c.roots.size()) && other < 0; ++m) {
      const auto& path = c.roots[m].path;
      const bool first = c.roots[m].kind == GQRootKind::First;
      for (int pos : first ? std::vector<int>{1, 3} : std::vector<int>{0, 2, 4}) {
        if (a[path[pos]] != path[pos]) other = m;
      }
    }
    const auto cg = certify_gq_root_elation(c.gq.geom, c.apartments, a, c.roots[other]);
    out.push_back(timed(sw, make_report("negative.wrong-root", "gq root " + pad(k) + " as " + pad(other), !cg.pass,
                                        {k, other}, {{"failure", cg.failure}})));
    break;
  }
  sink.add_block(std::move(out));
  sink.flush();
}

void run_h3_suite(const RunConfig& cfg, ReportSink& sink) {
  (void)cfg;
  Reports out;
  Stopwatch sw;
  const ThinH3Geom g = build_icosahedron();
  const int n = g.num_points();
  bool census_ok = n == 12 && g.lines.size() == 30 && g.planes.size() == 20;
  std::vector<int> census_wit;
  for (int p = 0; p < n; ++p) {
    int c[4] = {0, 0, 0, 0};
    for (int x = 0; x < n; ++x) ++c[g.dist[p][x]];
    if (!(c[0] == 1 && c[1] == 5 && c[2] == 5 && c[3] == 1)) {
      census_ok = false;
      if (census_wit.empty()) census_wit = {p};
    }
  }
  out.push_back(timed(sw, make_report("h3.census", "icosahedron", census_ok, census_wit,
                                      {{"points", n}, {"lines", g.lines.size()}, {"planes", g.planes.size()},
                                       {"per_point", {1, 5, 5, 1}}})));

  int certs = 0, bad = -1, bad_q = -1;
  for (int p = 0; p < n; ++p) {
    for (int b = 0; b < n; ++b) {
      const auto r = classify_pair(g, p, b);
      if (r.certificate_ok) ++certs;
      else if (bad < 0) {
        bad = p;
        bad_q = b;
      }
    }
  }
  out.push_back(timed(sw, make_report("h3.pair-certificates", "all ordered pairs", certs == n * n, {bad, bad_q},
                                      {{"pairs", n * n}, {"certified", certs}})));

  int total = 0, ok = 0;
  std::vector<int> pwit;
  for (int b = 0; b < n; ++b) {
    for (int p = 0; p < n; ++p) {
      if (g.dist[b][p] != 3) continue;
      for (int l : g.lines_through(b)) {
        ++total;
        try {
          h3_proj_line(g, b, l, p);
          ++ok;
        } catch (const Error&) {
          if (pwit.empty()) pwit = {b, l, p};
        }
      }
      for (int pi : g.planes_through(b)) {
        ++total;
        try {
          h3_proj_plane(g, b, pi, p);
          ++ok;
        } catch (const Error&) {
          if (pwit.empty()) pwit = {b, pi, p};
        }
      }
    }
  }
  out.push_back(timed(sw, make_report("h3.projections", "admissible triples", ok == total && total > 0, pwit,
                                      {{"triples", total}, {"defined", ok}})));

  bool threw = false;
  try {
    h3_chain_eval(g, {0, g.neighbours(0).front()}, {1, g.lines_through(0).front()});
  } catch (const ConsecutiveNotOpposite&) {
    threw = true;
  }
  out.push_back(timed(sw, make_report("h3.chain-not-opposite", "collinear bases", threw, {0})));

  int table_rows = 0, table_ok = 0, empty = 0;
  for (int b = 0; b < n; ++b) {
    const auto pre = h3_recipe_preconditions(g, b);
    table_rows += pre.table_rows;
    table_ok += pre.table_ok;
    empty += pre.conclusion == "NotInstantiableInThinModel" ? 1 : 0;
  }
  out.push_back(timed(sw, make_report("h3.mapping-table", "all base points", table_ok == table_rows, {table_rows - table_ok},
                                      {{"rows", table_rows}, {"agree", table_ok}})));
  const auto pre0 = h3_recipe_preconditions(g, 0);
  out.push_back(timed(sw, make_report("h3.recipe-preconditions", "all base points", empty == n, {empty},
                                      {{"conclusion", pre0.conclusion}, {"example", pre0.to_json()}})));

  const auto rig = h3_residual_rigidity(g, 0, 8, cfg.cap);
  out.push_back(timed(sw, make_report("h3.rigidity", "cap 8", rig.pass, {static_cast<int>(rig.group_order)},
                                      {{"chains", rig.chains}, {"group_order", rig.group_order},
                                       {"automorphisms", rig.pentagon_automorphisms},
                                       {"rigid_members", rig.rigid_members_checked}},
                                      rig.failure)));

  auto pent = [&](int s, int t, bool expect) {
    const auto f = pentagon_feasibility(s, t);
    out.push_back(timed(sw, make_report("pentagon.feasibility", "s=" + pad(s, 2) + " t=" + pad(t, 2), f.feasible == expect,
                                        {s, t}, f.to_json(), f.reason)));
  };
  pent(1, 1, true);
  for (int s = 2; s <= 20; ++s) {
    for (int t = 2; t <= 20; ++t) pent(s, t, false);
  }
  sink.add_block(std::move(out));
  sink.flush();
}

void run_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink) {
  validate_config(cfg);
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "axioms") run_axioms_suite(g, cfg, sink);
  if (all || cfg.suite == "gq-elations") run_gq_elations_suite(g, cfg, sink);
  if (all || cfg.suite == "extensions") run_extensions_suite(g, cfg, sink);
  if (all || cfg.suite == "moufang") run_moufang_suite(g, cfg, sink);
  if (all || cfg.suite == "corollaries") run_corollaries_suite(g, cfg, sink);
  if (all || cfg.suite == "h3") run_h3_suite(cfg, sink);
}

}  // namespace mforge
