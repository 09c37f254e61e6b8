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

// Developer identity unification across login / email / name attributes.

#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mirrec/events.hpp"

namespace mirrec {

struct DeveloperId {
  std::string canonical;

  friend auto operator<=>(const DeveloperId&, const DeveloperId&) = default;
};

// Reserved id for actors without any identity attribute.
inline const DeveloperId kInvalidDeveloper{"invalid"};

// Lowercase, trim, collapse internal whitespace runs to a single space.
std::string normalize_attribute(std::string_view s);

// Splits joint author names on "and" (whole word), "&&", "&", "+" and "|".
std::vector<std::string> split_compound_names(std::string_view name);

std::size_t levenshtein(std::string_view a, std::string_view b);

// A forced login/email/name association, as read from the override CSV.
struct IdentityOverride {
  std::string login;
  std::string email;
  std::string name;
};

// Reads `login,email,name` rows. A first row equal to that literal header is
// skipped; empty email/name cells are allowed.
std::vector<IdentityOverride> parse_identity_overrides(std::istream& in);
std::vector<IdentityOverride> read_identity_overrides_file(
    const std::string& path);

class IdentityMap {
 public:
  // Returns the developer for an actor. Joint names resolve to their first
  // fragment; use resolve_all for the full list.
  DeveloperId resolve(const RawActor& actor) const;

  // One id per developer behind the actor (several for "A and B" commit
  // authors without login/email). Never empty.
  std::vector<DeveloperId> resolve_all(const RawActor& actor) const;

  const std::map<std::string, DeveloperId>& by_login() const { return by_login_; }
  const std::map<std::string, DeveloperId>& by_email() const { return by_email_; }
  const std::map<std::string, DeveloperId>& by_name() const { return by_name_; }
  std::size_t anon_count() const { return anon_counter_; }
  std::size_t max_distance() const { return max_distance_; }

  // Number of distinct actor keys seen while building.
  std::size_t actors_seen() const { return resolved_.size(); }

 private:
  friend IdentityMap build_identity_map(const EventLog&, std::size_t,
                                        const std::vector<IdentityOverride>&);

  struct Key {
    std::string login, email, name;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  static Key key_of(const RawActor& actor);

  void register_known(const std::string& login, const std::string& email,
                      const std::string& name);
  std::vector<DeveloperId> lookup(const Key& key) const;
  std::vector<DeveloperId> resolve_key(const Key& key);

  std::map<std::string, DeveloperId> by_login_;
  std::map<std::string, DeveloperId> by_email_;
  std::map<std::string, DeveloperId> by_name_;
  std::map<Key, std::vector<DeveloperId>> resolved_;
  std::size_t anon_counter_ = 0;
  std::size_t max_distance_ = 2;
};

// Two passes over every actor in the log: logins first (with their emails and
// name fragments), then everything else by exact email, exact name fragment,
// and finally the nearest registered email/name within max_distance edits.
// Anything left becomes "anon:<n>".
IdentityMap build_identity_map(const EventLog& log,
                               std::size_t max_distance = 2,
                               const std::vector<IdentityOverride>& overrides = {});

}  // namespace mirrec
