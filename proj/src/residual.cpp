#include <map>

#include "mforge/elation.hpp"
#include "mforge/oracle.hpp"
#include "mforge/verifier.hpp"

namespace mforge {

ResidualRealization realize_all_residual_elations(const PolarSpace& g, const GQView& gq,
                                                  const std::vector<GQApartment>& apartments, const GQRoot& r) {
  ResidualRealization res;
  std::map<Perm, std::vector<int>> swept;
  auto record = [&](const Perm& action, const std::vector<int>& bases) {
    ++res.instances;
    ++res.chains_checked;
    const auto sp = verify_self_projectivity(g, bases);
    if (!sp.pass && res.failure.empty()) {
      res.failure = "chain certificate: " + sp.failure;
      res.witness = bases;
    }
    swept.emplace(action, bases);
  };
  for (int idx : gq_apartments_containing(apartments, r)) {
    const GQRootData D = gq_root_data(gq, r, apartments[idx]);
    if (r.kind == GQRootKind::First) {
      for (int u_t : line_points_except(g, D.u, D.q, {D.q})) {
        for (int j : line_points_except(g, gq.p, D.q, {gq.p, D.q})) {
          const auto e = build_first_kind_gq_elation(g, gq, D.q, D.d, D.u, D.n, u_t, j);
          record(e.action, e.recipe.bases());
        }
      }
    } else {
      for (int u_t : gq_common_neighbours(g, gq, D.q, D.n, D.d)) {
        for (int jp : line_points_except(g, gq.b, D.u, {gq.b, D.u})) {
          const auto e = build_second_kind_gq_elation(g, gq, D.d, D.q, D.u, D.n, u_t, jp);
          record(e.action, e.recipe.bases());
        }
      }
    }
  }
  for (const auto& s : gq_root_elation_oracle(gq.geom, apartments, r)) {
    if (is_identity(s)) continue;
    ++res.nontrivial;
    auto it = swept.find(s);
    if (it == swept.end()) {
      if (res.failure.empty()) {
        res.failure = "oracle elation not realized by any recipe instance";
        res.witness = s;
      }
      continue;
    }
    ++res.realized;
    res.chains.push_back(it->second);
  }
  res.pass = res.failure.empty() && res.nontrivial > 0 && res.realized == res.nontrivial;
  if (res.pass == false && res.failure.empty()) res.failure = "no nontrivial elation found";
  return res;
}

}  // namespace mforge
