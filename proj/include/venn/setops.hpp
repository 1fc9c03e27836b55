#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "venn/common.hpp"

namespace venn::setops {

// One input list after deduplication.
struct IdSet {
  std::string name;
  Rgba color;
  std::vector<std::string> ids;  // unique, in order of first occurrence
};

using IdList = std::vector<std::string>;
using DisplayEntry = std::pair<Mask, IdList>;

// Partition of the union into exclusive regions plus all inclusive intersections.
struct RegionTable {
  int n = 0;
  // mask -> IDs belonging to exactly that combination of sets
  std::map<Mask, IdList> exclusive;
  std::size_t union_size = 0;
  // mask -> IDs common to every set in the combination; one entry per mask in 1..2^n-1
  std::map<Mask, IdList> inclusive;
  // non-empty inclusive entries left after pruning, by popcount then mask
  std::vector<DisplayEntry> display;

  std::size_t set_size(int i) const { return inclusive.at(Mask{1} << i).size(); }
  std::size_t intersection_size(Mask combination) const;
  bool is_displayed(Mask combination) const;
};

// Splits on newlines and commas, trims whitespace, drops empty tokens.
IdList parse_id_list(std::string_view text);

// Keeps the first occurrence of each ID; comparison is byte-exact.
IdList dedupe(std::span<const std::string> ids);

// Dedupes `ids` and validates the name. Throws InputError on an empty name or list.
IdSet make_id_set(std::string name, Rgba color, std::span<const std::string> ids);

// Throws InputError for fewer than 2 / more than 10 sets, empty sets, or duplicate names.
RegionTable build_region_table(std::span<const IdSet> sets);

// Drops every combination whose inclusive list equals that of a strict superset combination.
std::vector<DisplayEntry> prune_redundant(const RegionTable& table);

// Names of the sets in a combination, in set index order.
std::vector<std::string> member_names(Mask combination, std::span<const IdSet> sets);

// Ascending popcount, then ascending mask value.
bool display_order(Mask a, Mask b);

}  // namespace venn::setops
