#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace sessterm {

// A channel name. `index` disambiguates freshened copies of a surface name;
// surface names parse with index 0 and print without it.
struct Name {
  std::string base;
  int index = 0;

  Name() = default;
  explicit Name(std::string b, int i = 0) : base(std::move(b)), index(i) {}

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

  std::string str() const {
    return index == 0 ? base : base + "%" + std::to_string(index);
  }
};

using NameSet = std::set<Name>;

// Deterministic fresh-name source. Seed it with every name (free and bound)
// of the terms an analysis works on; fresh() then never returns a name that
// occurs in them. Generated bases start with '%', which the surface grammar
// reserves, so user names cannot collide either.
class NameSupply {
 public:
  NameSupply() = default;

  void reserve(const Name& n) { reserved_.insert(n); }
  void reserve(const NameSet& ns) { reserved_.insert(ns.begin(), ns.end()); }

  // Fresh name in the dedicated namespace: %<tag>0, %<tag>1, ...
  Name fresh(const std::string& tag) {
    int& k = counters_[tag];
    for (;;) {
      Name cand("%" + tag + std::to_string(k++), 0);
      if (!reserved_.count(cand)) {
        reserved_.insert(cand);
        return cand;
      }
    }
  }

  // Same base, next free index. Used when renaming a user binder.
  Name fresh_like(const Name& n) {
    Name cand = n;
    do {
      ++cand.index;
    } while (reserved_.count(cand));
    reserved_.insert(cand);
    return cand;
  }

  bool known(const Name& n) const { return reserved_.count(n) > 0; }

 private:
  NameSet reserved_;
  std::map<std::string, int> counters_;
};

}  // namespace sessterm
