// Copyright 2026 the lowtw authors
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

#include "core/constraint.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lowtw {

uint32_t StatefulConstraint::step(EdgeId e, uint32_t q) const {
  if (q >= num_states()) throw MalformedConstraint("state out of range");
  auto it = delta.find(e);
  if (it == delta.end()) return kReject;
  return it->second.at(q);
}

uint32_t StatefulConstraint::classify(const std::vector<EdgeId>& walk) const {
  uint32_t q = kInit;
  for (EdgeId e : walk) q = step(e, q);
  return q;
}

void StatefulConstraint::check_well_formed() const {
  if (names.size() < 2) throw MalformedConstraint("need at least init and bot");
  if (names[kInit] != "init") throw MalformedConstraint("state 0 must be init");
  if (names[kReject] != "bot") throw MalformedConstraint("state 1 must be bot");
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw MalformedConstraint("empty state name");
    if (!seen.insert(name).second)
      throw MalformedConstraint("duplicate state name " + name);
  }
  for (const auto& [e, table] : delta) {
    if (table.size() != names.size())
      throw MalformedConstraint("transition table size mismatch on edge " +
                                std::to_string(e));
    for (uint32_t q = 0; q < table.size(); ++q) {
      if (table[q] >= names.size())
        throw MalformedConstraint("transition target out of range");
      if (table[q] == kInit)
        throw MalformedConstraint("transition into the initial state");
    }
    if (table[kReject] != kReject)
      throw MalformedConstraint("reject state must be absorbing");
  }
}

StatefulConstraint colored_constraint(
    uint32_t c, const std::map<EdgeId, uint32_t>& coloring) {
  if (c == 0) throw MalformedConstraint("empty palette");
  StatefulConstraint out;
  out.names = {"init", "bot"};
  for (uint32_t i = 0; i < c; ++i) out.names.push_back("c" + std::to_string(i));
  for (const auto& [e, color] : coloring) {
    if (color >= c) throw MalformedConstraint("color out of palette");
    uint32_t color_state = 2 + color;
    std::vector<uint32_t> table(out.names.size(), color_state);
    table[StatefulConstraint::kReject] = StatefulConstraint::kReject;
    table[color_state] = StatefulConstraint::kReject;  // no repeats
    out.delta[e] = table;
  }
  out.check_well_formed();
  return out;
}

StatefulConstraint count_constraint(uint32_t c,
                                    const std::map<EdgeId, uint32_t>& bits) {
  StatefulConstraint out;
  out.names = {"init", "bot"};
  for (uint32_t i = 0; i <= c; ++i) out.names.push_back("n" + std::to_string(i));
  for (const auto& [e, bit] : bits) {
    if (bit > 1) throw MalformedConstraint("count labels must be bits");
    std::vector<uint32_t> table(out.names.size(), StatefulConstraint::kReject);
    table[StatefulConstraint::kInit] =
        bit <= c ? 2 + bit : StatefulConstraint::kReject;
    for (uint32_t j = 0; j <= c; ++j) {
      uint32_t sum = j + bit;
      table[2 + j] = sum <= c ? 2 + sum : StatefulConstraint::kReject;
    }
    out.delta[e] = table;
  }
  out.check_well_formed();
  return out;
}

std::string serialize_constraint(const StatefulConstraint& c) {
  std::ostringstream os;
  os << "states";
  for (const auto& name : c.names) os << ' ' << name;
  os << '\n';
  for (const auto& [e, table] : c.delta) {
    bool any = false;
    for (uint32_t q = 0; q < table.size(); ++q) {
      if (table[q] == StatefulConstraint::kReject) continue;
      if (!any) {
        os << e << ':';
        any = true;
      }
      os << ' ' << c.names[q] << "->" << c.names[table[q]];
    }
    if (any) os << '\n';
  }
  return os.str();
}

StatefulConstraint parse_constraint(const std::string& text) {
  StatefulConstraint out;
  std::istringstream is(text);
  std::string line;
  bool have_states = false;
  std::map<std::string, uint32_t> index;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!have_states) {
      if (tok != "states")
        throw ParseError("constraint must start with a states line");
      std::string name;
      while (ls >> name) {
        if (!index.emplace(name, static_cast<uint32_t>(out.names.size())).second)
          throw ParseError("duplicate state " + name);
        out.names.push_back(name);
      }
      if (out.names.size() < 2 || out.names[0] != "init" || out.names[1] != "bot")
        throw ParseError("states must begin with init and bot");
      have_states = true;
      continue;
    }
    if (tok.empty() || tok.back() != ':')
      throw ParseError("edge line must start with 'edge_id:' at line " +
                       std::to_string(line_no));
    tok.pop_back();
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad edge id '" + tok + "'");
    EdgeId e = static_cast<EdgeId>(std::stoull(tok));
    if (out.delta.count(e)) throw ParseError("duplicate edge line " + tok);
    std::vector<uint32_t> table(out.names.size(), StatefulConstraint::kReject);
    std::string rule;
    while (ls >> rule) {
      size_t arrow = rule.find("->");
      if (arrow == std::string::npos)
        throw ParseError("transition needs '->': " + rule);
      std::string lhs = rule.substr(0, arrow);
      std::string rhs = rule.substr(arrow + 2);
      auto li = index.find(lhs);
      auto ri = index.find(rhs);
      if (li == index.end() || ri == index.end())
        throw ParseError("unknown state in " + rule);
      table[li->second] = ri->second;
    }
    out.delta[e] = table;
  }
  if (!have_states) throw ParseError("missing states line");
  try {
    out.check_well_formed();
  } catch (const MalformedConstraint& err) {
    throw ParseError(err.what());
  }
  return out;
}

}  // namespace lowtw
