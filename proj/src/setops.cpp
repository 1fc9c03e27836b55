#include "venn/setops.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace venn::setops {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::size_t RegionTable::intersection_size(Mask combination) const {
  auto it = inclusive.find(combination);
  return it == inclusive.end() ? 0 : it->second.size();
}

bool RegionTable::is_displayed(Mask combination) const {
  return std::any_of(display.begin(), display.end(),
                     [&](const DisplayEntry& e) { return e.first == combination; });
}

bool display_order(Mask a, Mask b) {
  const int pa = popcount(a);
  const int pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

IdList parse_id_list(std::string_view text) {
  IdList out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = text.find_first_of(",\n", start);
    const auto token = trim(text.substr(start, stop == std::string_view::npos ? text.npos : stop - start));
    if (!token.empty()) out.emplace_back(token);
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  return out;
}

IdList dedupe(std::span<const std::string> ids) {
  IdList out;
  std::unordered_set<std::string_view> seen;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

IdSet make_id_set(std::string name, Rgba color, std::span<const std::string> ids) {
  if (trim(name).empty()) throw InputError("set name must not be empty");
  IdSet set{std::move(name), color, dedupe(ids)};
  if (set.ids.empty()) throw InputError("set '" + set.name + "' has no identifiers");
  return set;
}

RegionTable build_region_table(std::span<const IdSet> sets) {
  const int n = static_cast<int>(sets.size());
  if (n < kMinSets || n > kMaxSets)
    throw InputError("expected two to ten sets, got " + std::to_string(n));
  {
    std::unordered_set<std::string_view> names;
    for (const auto& s : sets) {
      if (s.ids.empty()) throw InputError("set '" + s.name + "' has no identifiers");
      if (!names.insert(s.name).second) throw InputError("duplicate set name '" + s.name + "'");
    }
  }

  // Membership mask per distinct ID, in order of first appearance across the sets.
  std::vector<std::string_view> order;
  std::unordered_map<std::string_view, Mask> membership;
  for (int i = 0; i < n; ++i) {
    for (const auto& id : sets[i].ids) {
      auto [it, inserted] = membership.try_emplace(id, Mask{0});
      if (inserted) order.push_back(id);
      it->second |= Mask{1} << i;
    }
  }

  RegionTable table;
  table.n = n;
  table.union_size = order.size();
  const Mask full = (Mask{1} << n) - 1;
  for (Mask c = 1; c <= full; ++c) table.inclusive[c];

  for (auto id : order) {
    const Mask m = membership[id];
    table.exclusive[m].emplace_back(id);
    // every non-empty sub-combination of m contains this ID
    for (Mask c = m; c != 0; c = (c - 1) & m) table.inclusive[c].emplace_back(id);
  }

  table.display = prune_redundant(table);
  return table;
}

std::vector<DisplayEntry> prune_redundant(const RegionTable& table) {
  const Mask full = (Mask{1} << table.n) - 1;
  std::vector<DisplayEntry> out;
  for (const auto& [c, ids] : table.inclusive) {
    if (ids.empty()) continue;
    // inclusive(c') is a subset of inclusive(c) for c' a superset of c, so equality with any
    // strict superset implies equality with some one-set extension; sizes decide it.
    bool redundant = false;
    for (int k = 0; k < table.n && !redundant; ++k) {
      const Mask bit = Mask{1} << k;
      if ((c & bit) || ((c | bit) & ~full)) continue;
      redundant = table.intersection_size(c | bit) == ids.size();
    }
    if (!redundant) out.emplace_back(c, ids);
  }
  std::sort(out.begin(), out.end(),
            [](const DisplayEntry& a, const DisplayEntry& b) { return display_order(a.first, b.first); });
  return out;
}

std::vector<std::string> member_names(Mask combination, std::span<const IdSet> sets) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (combination & (Mask{1} << i)) out.push_back(sets[i].name);
  }
  return out;
}

}  // namespace venn::setops
