/*
 * Copyright (C) 2026 The ponplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "solver_internal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ponplan {

namespace detail {

namespace {

constexpr double kImprovement = 1e-9;

/// Assignment of ONUs to flat site ids with cached per-site cost.
class Placement {
 public:
  Placement(const Scenario &scenario, const CandidateTable &table)
      : p_(scenario.params()), table_(table), members_(table.sites.size()), cost_(table.sites.size(), 0.0),
        where_(scenario.num_onu(), kNone), dist_(scenario.num_onu(), table.sites.size(), std::nan("")) {
    for (std::size_t d = 0; d < scenario.num_onu(); ++d)
      for (const auto &c : table.per_onu[d]) dist_(d, c.flat) = c.distance_km;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool        candidate(std::size_t d, std::size_t f) const { return !std::isnan(dist_(d, f)); }
  double      dist(std::size_t d, std::size_t f) const { return dist_(d, f); }
  std::size_t where(std::size_t d) const { return where_[d]; }
  std::size_t num_sites() const { return members_.size(); }
  std::size_t num_onus() const { return where_.size(); }
  const std::vector<std::size_t> &members(std::size_t f) const { return members_[f]; }
  double      cost(std::size_t f) const { return cost_[f]; }
  Tier        tier(std::size_t f) const { return table_.sites.ref(f).tier; }
  const CandidateTable &table() const { return table_; }

  double total() const {
    double t = 0.0;
    for (double c : cost_) t += c;
    return t;
  }

  /// Cost of site f if it served exactly `onus`; infinity when no rack count meets D_QoS.
  double evaluate(std::size_t f, const std::vector<std::size_t> &onus) const {
    if (onus.empty()) return 0.0;
    double worst = 0.0, fiber = 0.0;
    for (std::size_t d : onus) worst = std::max(worst, dist_(d, f));
    const Tier t = tier(f);
    if (t == Tier::Field)
      for (std::size_t d : onus) fiber += dist_(d, f);
    const int racks = rack_search(onus.size(), t, worst, p_);
    return racks == 0 ? kInf : site_cost(p_, t, racks, fiber);
  }

  void place(std::size_t d, std::size_t f) {
    if (where_[d] == f) return;
    if (where_[d] != kNone) {
      auto &old = members_[where_[d]];
      old.erase(std::find(old.begin(), old.end(), d));
      cost_[where_[d]] = evaluate(where_[d], old);
    }
    auto &dst = members_[f];
    dst.insert(std::upper_bound(dst.begin(), dst.end(), d), d);
    cost_[f]  = evaluate(f, dst);
    where_[d] = f;
  }

  std::vector<SiteRef> assignment() const {
    std::vector<SiteRef> out(where_.size());
    for (std::size_t d = 0; d < where_.size(); ++d) out[d] = table_.sites.ref(where_[d]);
    return out;
  }

 private:
  const Parameters                     &p_;
  const CandidateTable                 &table_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<double>                   cost_;
  std::vector<std::size_t>              where_;
  Matrix<double>                        dist_;
};

/// Tentative edits on top of a Placement, for pricing compound moves.
class Overlay {
 public:
  explicit Overlay(const Placement &base) : base_(base) {}

  const std::vector<std::size_t> &members(std::size_t f) const {
    auto it = edited_.find(f);
    return it == edited_.end() ? base_.members(f) : it->second;
  }

  double cost(std::size_t f) const {
    auto it = cost_.find(f);
    return it == cost_.end() ? base_.cost(f) : it->second;
  }

  std::size_t where(std::size_t d) const {
    auto it = moved_.find(d);
    return it == moved_.end() ? base_.where(d) : it->second;
  }

  /// Move d to f and return the resulting change in total cost.
  double move(std::size_t d, std::size_t f) {
    const std::size_t from  = where(d);
    double            delta = 0.0;
    auto              src   = members(from);
    src.erase(std::find(src.begin(), src.end(), d));
    delta += set(from, std::move(src));
    auto dst = members(f);
    dst.insert(std::upper_bound(dst.begin(), dst.end(), d), d);
    delta += set(f, std::move(dst));
    moved_[d] = f;
    moves_.emplace_back(d, f);
    return delta;
  }

  /// Price of adding d to f on top of the current edits (does not record anything).
  double price_add(std::size_t d, std::size_t f) const {
    auto dst = members(f);
    dst.insert(std::upper_bound(dst.begin(), dst.end(), d), d);
    return base_.evaluate(f, dst) - cost(f);
  }

  const std::vector<std::pair<std::size_t, std::size_t>> &moves() const { return moves_; }

 private:
  double set(std::size_t f, std::vector<std::size_t> onus) {
    const double before = cost(f);
    const double after  = base_.evaluate(f, onus);
    edited_[f]          = std::move(onus);
    cost_[f]            = after;
    if (before == kInf && after == kInf) return 0.0;
    return after - before;
  }

  const Placement                                   &base_;
  std::map<std::size_t, std::vector<std::size_t>>   edited_;
  std::map<std::size_t, double>                     cost_;
  std::map<std::size_t, std::size_t>                moved_;
  std::vector<std::pair<std::size_t, std::size_t>>  moves_;
};

void apply(Placement &placement, const std::vector<std::pair<std::size_t, std::size_t>> &moves) {
  for (const auto &[d, f] : moves) placement.place(d, f);
}

// ---- moves ---------------------------------------------------------------------

bool try_single(Placement &pl) {
  for (std::size_t d = 0; d < pl.num_onus(); ++d) {
    for (const auto &c : pl.table().per_onu[d]) {
      if (c.flat == pl.where(d)) continue;
      Overlay o(pl);
      if (o.move(d, c.flat) < -kImprovement) {
        apply(pl, o.moves());
        return true;
      }
    }
  }
  return false;
}

bool try_pair(Placement &pl) {
  for (std::size_t s = 0; s < pl.num_sites(); ++s) {
    const auto mem = pl.members(s);
    for (std::size_t i = 0; i < mem.size(); ++i) {
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        for (const auto &c : pl.table().per_onu[mem[i]]) {
          if (c.flat == s || !pl.candidate(mem[j], c.flat)) continue;
          Overlay o(pl);
          const double delta = o.move(mem[i], c.flat) + o.move(mem[j], c.flat);
          if (delta < -kImprovement) {
            apply(pl, o.moves());
            return true;
          }
        }
      }
    }
  }
  return false;
}

/// Empty a site, sending each member to its cheapest other option.
bool try_close(Placement &pl) {
  for (std::size_t s = 0; s < pl.num_sites(); ++s) {
    if (pl.members(s).empty()) continue;
    Overlay o(pl);
    double  delta = 0.0;
    bool    ok    = true;
    for (std::size_t d : pl.members(s)) {
      std::size_t best_f = Placement::kNone;
      double      best   = kInf;
      for (const auto &c : pl.table().per_onu[d]) {
        if (c.flat == s) continue;
        const double price = o.price_add(d, c.flat);
        if (price < best) {
          best   = price;
          best_f = c.flat;
        }
      }
      if (best_f == Placement::kNone) {
        ok = false;
        break;
      }
      delta += o.move(d, best_f);
    }
    if (ok && delta < -kImprovement) {
      apply(pl, o.moves());
      return true;
    }
  }
  return false;
}

/// Pull the nearest outside ONUs into a site; keep the best prefix.
bool try_pull(Placement &pl) {
  for (std::size_t t = 0; t < pl.num_sites(); ++t) {
    std::vector<std::size_t> outside;
    for (std::size_t d : pl.table().onus_of_site[t])
      if (pl.where(d) != t) outside.push_back(d);
    if (outside.empty()) continue;
    std::stable_sort(outside.begin(), outside.end(),
                     [&](std::size_t a, std::size_t b) { return pl.dist(a, t) < pl.dist(b, t); });

    Overlay     o(pl);
    double      delta = 0.0, best = -kImprovement;
    std::size_t best_len = 0;
    for (std::size_t k = 0; k < outside.size(); ++k) {
      delta += o.move(outside[k], t);
      if (o.cost(t) == kInf) break;
      if (delta < best) {
        best     = delta;
        best_len = k + 1;
      }
    }
    if (best_len > 0) {
      const auto moves = o.moves();
      apply(pl, {moves.begin(), moves.begin() + static_cast<std::ptrdiff_t>(best_len)});
      return true;
    }
  }
  return false;
}

void local_search(Placement &pl) {
  // Every accepted move lowers the total by more than kImprovement, so this terminates.
  while (try_single(pl) || try_close(pl) || try_pull(pl) || try_pair(pl)) {
  }
}

// ---- construction ------------------------------------------------------------------

std::size_t nearest_feasible_field(const Placement &pl, std::size_t d) {
  std::size_t best_f = Placement::kNone;
  double      best   = kInf;
  for (const auto &c : pl.table().per_onu[d]) {
    if (c.site.tier != Tier::Field || c.distance_km >= best) continue;
    auto mem = pl.members(c.flat);
    mem.insert(std::upper_bound(mem.begin(), mem.end(), d), d);
    if (pl.evaluate(c.flat, mem) < kInf) {
      best   = c.distance_km;
      best_f = c.flat;
    }
  }
  return best_f;
}

bool fits(const Placement &pl, std::size_t d, std::size_t f) {
  auto mem = pl.members(f);
  mem.insert(std::upper_bound(mem.begin(), mem.end(), d), d);
  return pl.evaluate(f, mem) < kInf;
}

/// CO first, escalate whole RN groups to their RN, then single ONUs to field sites.
bool construct(const Scenario &scenario, Placement &pl) {
  const auto       &table = pl.table();
  const std::size_t nd    = scenario.num_onu();

  for (std::size_t d = 0; d < nd; ++d) {
    const auto &cands = table.per_onu[d];
    // Candidates are sorted CO, RN, field; field falls back to the nearest one.
    std::size_t pick = cands.front().flat;
    if (cands.front().site.tier == Tier::Field) {
      double best = kInf;
      for (const auto &c : cands)
        if (c.distance_km < best) {
          best = c.distance_km;
          pick = c.flat;
        }
    }
    pl.place(d, pick);
  }

  // Overloaded COs hand RN groups down, largest group first.
  for (std::size_t c = 0; c < scenario.num_co(); ++c) {
    const std::size_t f = table.sites.flat({Tier::Co, c});
    while (pl.cost(f) == kInf) {
      std::map<std::size_t, std::size_t> group_size;
      for (std::size_t d : pl.members(f)) ++group_size[scenario.rn_of(d)];
      std::size_t rn = Placement::kNone, size = 0;
      for (const auto &[b, n] : group_size) {
        bool movable = false;
        for (std::size_t d : pl.members(f))
          if (scenario.rn_of(d) == b && pl.candidate(d, table.sites.flat({Tier::Rn, b}))) movable = true;
        if (movable && n > size) {
          rn   = b;
          size = n;
        }
      }
      if (rn != Placement::kNone) {
        const std::size_t target = table.sites.flat({Tier::Rn, rn});
        const auto        mem    = pl.members(f);
        for (std::size_t d : mem)
          if (scenario.rn_of(d) == rn && pl.candidate(d, target)) pl.place(d, target);
        continue;
      }
      const std::size_t d     = pl.members(f).back();
      const std::size_t field = nearest_feasible_field(pl, d);
      if (field == Placement::kNone) return false;
      pl.place(d, field);
    }
  }

  // Overloaded RNs shed their farthest ONUs to field sites, or back to the CO.
  for (std::size_t b = 0; b < scenario.num_rn(); ++b) {
    const std::size_t f = table.sites.flat({Tier::Rn, b});
    while (pl.cost(f) == kInf) {
      const auto &mem = pl.members(f);
      std::size_t far = mem.front();
      for (std::size_t d : mem)
        if (pl.dist(d, f) >= pl.dist(far, f)) far = d;
      std::size_t target = nearest_feasible_field(pl, far);
      if (target == Placement::kNone) {
        const std::size_t co = table.sites.flat({Tier::Co, scenario.co_of(far)});
        if (pl.candidate(far, co) && fits(pl, far, co)) target = co;
      }
      if (target == Placement::kNone) return false;
      pl.place(far, target);
    }
  }

  for (std::size_t f = 0; f < pl.num_sites(); ++f)
    if (pl.cost(f) == kInf) return false;
  return true;
}

} // namespace

std::vector<SiteRef> improve(const Scenario &scenario, const CandidateTable &table, std::vector<SiteRef> assignment) {
  Placement pl(scenario, table);
  for (std::size_t d = 0; d < assignment.size(); ++d) pl.place(d, table.sites.flat(assignment[d]));
  local_search(pl);
  return pl.assignment();
}

} // namespace detail

SolveResult greedy_heuristic(const Scenario &scenario, const SolverConfig &config) {
  detail::Stopwatch      clock;
  detail::CandidateTable table(scenario);
  SolveResult            r;

  if (table.hopeless_onu) {
    r = detail::infeasible_result(table.cause, "ONU " + std::to_string(*table.hopeless_onu) +
                                                   " cannot meet D_QoS at any admissible cloudlet with k_max racks");
  } else if (scenario.num_onu() == 0) {
    r = detail::finish(scenario, {}, SolveStatus::Feasible);
  } else {
    detail::Placement pl(scenario, table);
    if (detail::construct(scenario, pl)) {
      detail::local_search(pl);
      r = detail::finish(scenario, pl.assignment(), SolveStatus::Feasible);
    } else {
      // Greedy repair got stuck: let the exact search find a start point or prove there is none.
      r = detail::branch_and_bound_from(scenario, config, table, nullptr);
      if (r.decision) {
        std::vector<SiteRef> start;
        for (const auto &a : r.decision->assign) start.push_back(*a);
        const auto status = r.status;
        const auto nodes  = r.nodes_explored;
        r                 = detail::finish(scenario, detail::improve(scenario, table, std::move(start)), status);
        r.nodes_explored  = nodes;
      }
    }
  }
  r.wall_time_s = clock.seconds();
  return r;
}

} // namespace ponplan
