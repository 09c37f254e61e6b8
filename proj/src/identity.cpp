// mirrec - multiplex-relationship hypergraph reviewer recommendation
// Copyright 2026 The mirrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mirrec/identity.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <regex>
#include <sstream>

#include "mirrec/error.hpp"

namespace mirrec {

namespace {

const std::regex& separator_regex() {
  static const std::regex re(R"(\s*(?:\band\b|&&|&|\+|\|)\s*)",
                             std::regex::ECMAScript | std::regex::icase);
  return re;
}

std::string trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

struct Candidate {
  std::size_t distance;
  const DeveloperId* id;
};

// Closest entry of `table` to `query` within max_distance; ties go to the
// lexicographically smaller id.
void nearest(const std::map<std::string, DeveloperId>& table,
             const std::string& query, std::size_t max_distance,
             std::optional<Candidate>& best) {
  if (query.empty()) return;
  for (const auto& [attr, id] : table) {
    // Length difference is a lower bound on the edit distance.
    std::size_t gap = attr.size() > query.size() ? attr.size() - query.size()
                                                 : query.size() - attr.size();
    if (gap > max_distance) continue;
    std::size_t d = levenshtein(attr, query);
    if (d > max_distance) continue;
    if (!best || d < best->distance ||
        (d == best->distance && id < *best->id)) {
      best = Candidate{d, &id};
    }
  }
}

std::vector<std::string> fragments_of(const std::string& normalized_name) {
  std::vector<std::string> out;
  for (auto& f : split_compound_names(normalized_name)) {
    std::string n = normalize_attribute(f);
    if (!n.empty() && std::find(out.begin(), out.end(), n) == out.end()) {
      out.push_back(std::move(n));
    }
  }
  return out;
}

void push_unique(std::vector<DeveloperId>& ids, DeveloperId id) {
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    ids.push_back(std::move(id));
  }
}

}  // namespace

std::string normalize_attribute(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::vector<std::string> split_compound_names(std::string_view name) {
  std::string input(name);
  std::vector<std::string> parts;
  const auto& re = separator_regex();
  std::sregex_token_iterator it(input.begin(), input.end(), re, -1);
  for (std::sregex_token_iterator end; it != end; ++it) {
    std::string piece = trim(it->str());
    if (!piece.empty()) parts.push_back(std::move(piece));
  }
  if (parts.empty()) {
    std::string whole = trim(input);
    if (!whole.empty()) parts.push_back(std::move(whole));
  }
  return parts;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<IdentityOverride> parse_identity_overrides(std::istream& in) {
  std::vector<IdentityOverride> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 3) {
      throw ParseError(ErrorCode::SchemaViolation, line_no, "row",
                       "identity override line " + std::to_string(line_no) +
                           ": expected 3 columns login,email,name");
    }
    if (line_no == 1 && cells[0] == "login" && cells[1] == "email" &&
        cells[2] == "name") {
      continue;
    }
    if (cells[0].empty()) {
      throw ParseError(ErrorCode::SchemaViolation, line_no, "login",
                       "identity override line " + std::to_string(line_no) +
                           ": login is required");
    }
    rows.push_back({cells[0], cells[1], cells[2]});
  }
  return rows;
}

std::vector<IdentityOverride> read_identity_overrides_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path);
  return parse_identity_overrides(in);
}

IdentityMap::Key IdentityMap::key_of(const RawActor& actor) {
  return Key{normalize_attribute(actor.login.value_or("")),
             normalize_attribute(actor.email.value_or("")),
             normalize_attribute(actor.name.value_or(""))};
}

void IdentityMap::register_known(const std::string& login,
                                 const std::string& email,
                                 const std::string& name) {
  DeveloperId id{login};
  by_login_.try_emplace(login, id);
  if (!email.empty()) by_email_.try_emplace(email, id);
  if (!name.empty()) {
    for (auto& f : fragments_of(name)) by_name_.try_emplace(f, id);
  }
}

// Resolution without side effects. Unresolved parts come back as ids with an
// empty canonical string so the caller decides how to name them.
std::vector<DeveloperId> IdentityMap::lookup(const Key& key) const {
  if (!key.login.empty()) return {DeveloperId{key.login}};
  if (!key.email.empty()) {
    if (auto it = by_email_.find(key.email); it != by_email_.end()) {
      return {it->second};
    }
  }
  std::vector<std::string> frags = fragments_of(key.name);

  if (frags.size() <= 1) {
    std::string name = frags.empty() ? std::string() : frags.front();
    if (!name.empty()) {
      if (auto it = by_name_.find(name); it != by_name_.end()) {
        return {it->second};
      }
    }
    std::optional<Candidate> best;
    nearest(by_email_, key.email, max_distance_, best);
    nearest(by_name_, name, max_distance_, best);
    if (best) return {*best->id};
    return {DeveloperId{}};
  }

  // Joint author: every fragment is its own developer. Index i of the result
  // always corresponds to frags[i]; callers deduplicate.
  std::vector<DeveloperId> out;
  for (const auto& f : frags) {
    if (auto it = by_name_.find(f); it != by_name_.end()) {
      out.push_back(it->second);
      continue;
    }
    std::optional<Candidate> best;
    nearest(by_name_, f, max_distance_, best);
    out.push_back(best ? *best->id : DeveloperId{});
  }
  return out;
}

std::vector<DeveloperId> IdentityMap::resolve_key(const Key& key) {
  if (auto it = resolved_.find(key); it != resolved_.end()) return it->second;

  std::vector<DeveloperId> ids;
  if (key.login.empty() && key.email.empty() && key.name.empty()) {
    ids = {kInvalidDeveloper};
  } else {
    ids = lookup(key);
    std::vector<std::string> frags = fragments_of(key.name);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!ids[i].canonical.empty()) continue;
      ids[i] = DeveloperId{"anon:" + std::to_string(anon_counter_++)};
      // Later spellings of the same attribute land on the same anon id.
      if (frags.size() <= 1) {
        if (!key.email.empty()) by_email_.try_emplace(key.email, ids[i]);
        if (!frags.empty()) by_name_.try_emplace(frags.front(), ids[i]);
      } else if (i < frags.size()) {
        by_name_.try_emplace(frags[i], ids[i]);
      }
    }
    std::vector<DeveloperId> unique;
    for (auto& id : ids) push_unique(unique, std::move(id));
    ids = std::move(unique);
  }
  resolved_.emplace(key, ids);
  return ids;
}

std::vector<DeveloperId> IdentityMap::resolve_all(const RawActor& actor) const {
  Key key = key_of(actor);
  if (auto it = resolved_.find(key); it != resolved_.end()) return it->second;
  if (key.login.empty() && key.email.empty() && key.name.empty()) {
    return {kInvalidDeveloper};
  }
  // Actor not seen at build time: same rules, but the map stays untouched, so
  // leftovers get a name-derived id instead of a counter.
  std::vector<DeveloperId> ids = lookup(key);
  std::vector<std::string> frags = fragments_of(key.name);
  std::vector<DeveloperId> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].canonical.empty()) {
      std::string attr = frags.size() > 1 && i < frags.size() ? frags[i]
                         : !key.email.empty()        ? key.email
                                                     : key.name;
      ids[i] = DeveloperId{"anon:~" + attr};
    }
    push_unique(out, std::move(ids[i]));
  }
  return out;
}

DeveloperId IdentityMap::resolve(const RawActor& actor) const {
  return resolve_all(actor).front();
}

IdentityMap build_identity_map(const EventLog& log, std::size_t max_distance,
                               const std::vector<IdentityOverride>& overrides) {
  IdentityMap map;
  map.max_distance_ = max_distance;

  for (const auto& o : overrides) {
    map.register_known(normalize_attribute(o.login),
                       normalize_attribute(o.email),
                       normalize_attribute(o.name));
  }

  auto for_each_actor = [&log](auto&& fn) {
    for (const auto& pr : log.prs) {
      fn(pr.creator);
      for (const auto& c : pr.commits) fn(c.author);
      for (const auto& r : pr.reviews) fn(r.reviewer);
      for (const auto& c : pr.comments) fn(c.commenter);
    }
  };

  for_each_actor([&map](const RawActor& a) {
    IdentityMap::Key key = IdentityMap::key_of(a);
    if (!key.login.empty()) map.register_known(key.login, key.email, key.name);
  });
  for_each_actor([&map](const RawActor& a) {
    map.resolve_key(IdentityMap::key_of(a));
  });
  return map;
}

}  // namespace mirrec
