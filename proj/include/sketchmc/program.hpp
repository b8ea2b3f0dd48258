#pragma once

#include "sketchmc/expr.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sketchmc {

struct VarDecl {
  std::string name;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t init = 0;
};

struct UpdateAssign {
  int var = -1;  // index into variables
  ExprPtr value;
};

struct Branch {
  ExprPtr prob;  // null means probability 1
  std::vector<UpdateAssign> assigns;
};

struct Command {
  ExprPtr guard;
  std::vector<Branch> branches;
  int source_index = -1;  // ordinal position in file, stable under restriction
};

struct OptionDecl {
  ExprPtr expr;
  std::string name;  // empty if unnamed
  std::int64_t cost = 0;
};

struct HoleDecl {
  std::string id;
  std::vector<OptionDecl> options;
};

/// Resolution record for an option name used in constraints.
struct OptionAtom {
  std::string name;
  int hole = -1;
  int option = -1;
};

struct RewardItem {
  ExprPtr pred;   // state predicate
  ExprPtr value;  // rational-valued expression over variables
};

using RewardStructure = std::vector<RewardItem>;

struct Sketch {
  std::string module_name;
  std::vector<VarDecl> variables;
  std::vector<HoleDecl> holes;
  std::vector<ExprPtr> constraints;  // boolean formulas over option atoms
  std::vector<OptionAtom> option_atoms;
  std::vector<Command> commands;
  std::map<std::string, RewardStructure> rewards;
  // Computed once at parse time; generate_conflict and the CE search rely on
  // these per-command hole indices.
  std::vector<std::vector<int>> holes_in_command;
  std::vector<std::vector<int>> holes_in_guard;

  int hole_index(const std::string& id) const {
    for (std::size_t i = 0; i < holes.size(); ++i)
      if (holes[i].id == id) return static_cast<int>(i);
    return -1;
  }
  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

/// A hole-free program: same guarded-command shape as a sketch, holes and
/// constraints gone.
struct Program {
  std::string module_name;
  std::vector<VarDecl> variables;
  std::vector<Command> commands;
  std::map<std::string, RewardStructure> rewards;
};

/// Total assignment of option indices to holes (0-based).
using Realization = std::vector<int>;

/// Hole assignment with unassigned entries (-1).
struct PartialRealization {
  std::vector<int> choice;

  explicit PartialRealization(std::size_t holes = 0) : choice(holes, -1) {}
  static PartialRealization of(const Realization& r) {
    PartialRealization p;
    p.choice.assign(r.begin(), r.end());
    return p;
  }
  int assigned_count() const {
    int n = 0;
    for (int c : choice)
      if (c >= 0) ++n;
    return n;
  }
  bool extends(const PartialRealization& other) const {
    if (choice.size() != other.choice.size()) return false;
    for (std::size_t i = 0; i < choice.size(); ++i)
      if (other.choice[i] >= 0 && choice[i] != other.choice[i]) return false;
    return true;
  }
  bool operator==(const PartialRealization& other) const { return choice == other.choice; }
};

inline void scan_command_holes(Sketch& sk) {
  sk.holes_in_command.assign(sk.commands.size(), {});
  sk.holes_in_guard.assign(sk.commands.size(), {});
  for (std::size_t c = 0; c < sk.commands.size(); ++c) {
    std::set<int> in_cmd, in_guard;
    collect_holes(sk.commands[c].guard, in_guard);
    in_cmd = in_guard;
    for (const Branch& b : sk.commands[c].branches) {
      collect_holes(b.prob, in_cmd);
      for (const UpdateAssign& a : b.assigns) collect_holes(a.value, in_cmd);
    }
    sk.holes_in_command[c].assign(in_cmd.begin(), in_cmd.end());
    sk.holes_in_guard[c].assign(in_guard.begin(), in_guard.end());
  }
}

/// Instantiates a sketch under a total realization: every hole occurrence is
/// replaced by the chosen option expression, constraints are dropped.
/// Constraint satisfaction is the synthesiser's job and is not checked here.
inline Program instantiate(const Sketch& sk, const Realization& r) {
  if (r.size() != sk.holes.size())
    throw std::invalid_argument("realization does not assign every hole");
  std::vector<ExprPtr> chosen(sk.holes.size());
  for (std::size_t h = 0; h < sk.holes.size(); ++h) {
    if (r[h] < 0 || r[h] >= static_cast<int>(sk.holes[h].options.size()))
      throw std::out_of_range("option index " + std::to_string(r[h]) + " out of range for hole " +
                              sk.holes[h].id);
    chosen[h] = sk.holes[h].options[static_cast<std::size_t>(r[h])].expr;
  }
  Program p;
  p.module_name = sk.module_name;
  p.variables = sk.variables;
  p.rewards = sk.rewards;
  p.commands.reserve(sk.commands.size());
  for (const Command& c : sk.commands) {
    Command out;
    out.source_index = c.source_index;
    out.guard = substitute_holes(c.guard, chosen);
    for (const Branch& b : c.branches) {
      Branch nb;
      nb.prob = b.prob ? substitute_holes(b.prob, chosen) : nullptr;
      for (const UpdateAssign& a : b.assigns)
        nb.assigns.push_back({a.var, substitute_holes(a.value, chosen)});
      out.branches.push_back(std::move(nb));
    }
    if (contains_hole(out.guard)) throw std::logic_error("hole survived instantiation");
    for (const Branch& b : out.branches) {
      if (contains_hole(b.prob)) throw std::logic_error("hole survived instantiation");
      for (const UpdateAssign& a : b.assigns)
        if (contains_hole(a.value)) throw std::logic_error("hole survived instantiation");
    }
    p.commands.push_back(std::move(out));
  }
  return p;
}

/// Sum of the chosen option costs.
inline std::int64_t realization_cost(const Sketch& sk, const Realization& r) {
  if (r.size() != sk.holes.size())
    throw std::invalid_argument("realization does not assign every hole");
  std::int64_t total = 0;
  for (std::size_t h = 0; h < sk.holes.size(); ++h)
    total += sk.holes[h].options.at(static_cast<std::size_t>(r[h])).cost;
  return total;
}

/// Keeps only the commands whose source index is in `keep`; variables,
/// initial values and rewards are unchanged.
inline Program restrict(const Program& p, const std::set<int>& keep) {
  for (int i : keep)
    if (i < 0 || i >= static_cast<int>(p.commands.size()))
      throw std::out_of_range("command index out of range in restriction");
  Program out;
  out.module_name = p.module_name;
  out.variables = p.variables;
  out.rewards = p.rewards;
  for (const Command& c : p.commands)
    if (keep.count(c.source_index)) out.commands.push_back(c);
  return out;
}

namespace detail {

inline std::string unparse_command(const Command& c) {
  std::ostringstream os;
  os << unparse(c.guard) << " -> ";
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    if (i) os << " + ";
    const Branch& b = c.branches[i];
    if (b.prob) os << unparse(b.prob) << ": ";
    if (b.assigns.empty()) {
      os << "true";
    } else {
      for (std::size_t a = 0; a < b.assigns.size(); ++a) {
        if (a) os << " & ";
        os << "(" << '?' << ")";  // placeholder, replaced below
      }
    }
  }
  return os.str();
}

}  // namespace detail

inline std::string unparse_update(const std::vector<VarDecl>& vars, const Branch& b) {
  if (b.assigns.empty()) return "true";
  std::ostringstream os;
  for (std::size_t a = 0; a < b.assigns.size(); ++a) {
    if (a) os << " & ";
    os << "(" << vars[static_cast<std::size_t>(b.assigns[a].var)].name << "'="
       << unparse(b.assigns[a].value) << ")";
  }
  return os.str();
}

inline std::string unparse_command(const std::vector<VarDecl>& vars, const Command& c) {
  std::ostringstream os;
  os << unparse(c.guard) << " -> ";
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    if (i) os << " + ";
    const Branch& b = c.branches[i];
    if (b.prob) os << unparse(b.prob) << ": ";
    os << unparse_update(vars, b);
  }
  os << ";";
  return os.str();
}

inline std::string unparse_rewards(const std::map<std::string, RewardStructure>& rewards) {
  std::ostringstream os;
  for (const auto& [name, items] : rewards) {
    os << "rewards \"" << name << "\"\n";
    for (const RewardItem& it : items)
      os << "  " << unparse(it.pred) << " : " << unparse(it.value) << ";\n";
    os << "endrewards\n";
  }
  return os.str();
}

inline std::string unparse_sketch(const Sketch& sk) {
  std::ostringstream os;
  for (const HoleDecl& h : sk.holes) {
    os << "hole " << h.id << " either { ";
    for (std::size_t i = 0; i < h.options.size(); ++i) {
      if (i) os << ", ";
      const OptionDecl& o = h.options[i];
      if (!o.name.empty()) os << o.name << " is ";
      os << unparse(o.expr);
      if (o.cost != 0) os << " cost " << o.cost;
    }
    os << " }\n";
  }
  for (const ExprPtr& c : sk.constraints) os << "constraint " << unparse(c) << ";\n";
  os << "module " << sk.module_name << "\n";
  for (const VarDecl& v : sk.variables)
    os << "  " << v.name << " : [" << v.lo << ".." << v.hi << "] init " << v.init << ";\n";
  for (const Command& c : sk.commands) os << "  " << unparse_command(sk.variables, c) << "\n";
  os << "endmodule\n";
  os << unparse_rewards(sk.rewards);
  return os.str();
}

inline std::string unparse_program(const Program& p) {
  std::ostringstream os;
  os << "module " << p.module_name << "\n";
  for (const VarDecl& v : p.variables)
    os << "  " << v.name << " : [" << v.lo << ".." << v.hi << "] init " << v.init << ";\n";
  for (const Command& c : p.commands) os << "  " << unparse_command(p.variables, c) << "\n";
  os << "endmodule\n";
  os << unparse_rewards(p.rewards);
  return os.str();
}

}  // namespace sketchmc
