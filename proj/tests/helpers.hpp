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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mirrec/events.hpp"

namespace mirrec::test {

inline RawActor user(const std::string& login) {
  RawActor a;
  a.login = login;
  a.email = login + "@example.com";
  a.type = ActorType::User;
  return a;
}

inline RawActor bot(const std::string& login) {
  RawActor a = user(login);
  a.type = ActorType::Bot;
  return a;
}

inline RawActor by_email(const std::string& email) {
  RawActor a;
  a.email = email;
  return a;
}

inline RawActor by_name(const std::string& name) {
  RawActor a;
  a.name = name;
  return a;
}

inline PullRequest pr(const std::string& id, Timestamp created,
                      const std::string& creator,
                      std::vector<std::string> paths = {"src/a/x.cpp"}) {
  PullRequest p;
  p.pr_id = id;
  p.created_at = created;
  p.creator = user(creator);
  for (auto& path : paths) p.files.push_back({std::move(path), 10});
  return p;
}

inline void review(PullRequest& p, const std::string& who, Timestamp t) {
  p.reviews.push_back({user(who), t});
}

inline void commit(PullRequest& p, const std::string& who, Timestamp t,
                   std::int64_t lines = 10) {
  CommitEvent c;
  c.author = user(who);
  c.timestamp = t;
  c.files.push_back({p.files.empty() ? "src/a/x.cpp" : p.files.front().path, lines});
  p.commits.push_back(std::move(c));
}

inline EventLog log_of(std::vector<PullRequest> prs, Timestamp t_start,
                       Timestamp t_end) {
  EventLog log;
  log.project = "test";
  log.t_start = t_start;
  log.t_end = t_end;
  log.prs = std::move(prs);
  normalize_event_log(log);
  return log;
}

}  // namespace mirrec::test
