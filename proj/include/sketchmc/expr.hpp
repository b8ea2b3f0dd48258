#pragma once

#include "sketchmc/rational.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sketchmc {

// Arithmetic/boolean expressions over bounded integer variables, rational
// literals and hole references. Immutable, shared via ExprPtr.

enum class ExprKind { Num, BoolLit, Var, Hole, Unary, Binary };
enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, And, Or, Implies, Eq, Ne, Lt, Le, Gt, Ge };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  Rational num;       // Num
  bool bval = false;  // BoolLit
  std::string name;   // Var / Hole
  int index = -1;     // resolved variable / hole / option-atom index
  UnOp un{};
  BinOp bin{};
  ExprPtr lhs, rhs;  // Unary uses lhs only
};

inline ExprPtr make_num(Rational v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Num;
  e->num = std::move(v);
  return e;
}

inline ExprPtr make_bool(bool v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolLit;
  e->bval = v;
  return e;
}

inline ExprPtr make_var(std::string name, int index) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  e->index = index;
  return e;
}

inline ExprPtr make_hole(std::string name, int index) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Hole;
  e->name = std::move(name);
  e->index = index;
  return e;
}

inline ExprPtr make_unary(UnOp op, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->un = op;
  e->lhs = std::move(operand);
  return e;
}

inline ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->bin = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

inline bool is_bool_op(BinOp op) {
  switch (op) {
    case BinOp::And:
    case BinOp::Or:
    case BinOp::Implies:
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      return true;
    default:
      return false;
  }
}

inline bool is_comparison(BinOp op) {
  switch (op) {
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      return true;
    default:
      return false;
  }
}

enum class ExprType { Arith, Bool };

/// Infers the type of a well-formed expression; throws on ill-typed trees.
inline ExprType expr_type(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Num:
      return ExprType::Arith;
    case ExprKind::BoolLit:
      return ExprType::Bool;
    case ExprKind::Var:
    case ExprKind::Hole:
      return ExprType::Arith;
    case ExprKind::Unary:
      if (e->un == UnOp::Neg) {
        if (expr_type(e->lhs) != ExprType::Arith)
          throw std::invalid_argument("unary minus on boolean expression");
        return ExprType::Arith;
      }
      if (expr_type(e->lhs) != ExprType::Bool)
        throw std::invalid_argument("negation of arithmetic expression");
      return ExprType::Bool;
    case ExprKind::Binary: {
      ExprType l = expr_type(e->lhs), r = expr_type(e->rhs);
      if (is_comparison(e->bin)) {
        if (l != ExprType::Arith || r != ExprType::Arith)
          throw std::invalid_argument("comparison of boolean expressions");
        return ExprType::Bool;
      }
      if (is_bool_op(e->bin)) {
        if (l != ExprType::Bool || r != ExprType::Bool)
          throw std::invalid_argument("boolean operator on arithmetic expressions");
        return ExprType::Bool;
      }
      if (l != ExprType::Arith || r != ExprType::Arith)
        throw std::invalid_argument("arithmetic operator on boolean expressions");
      return ExprType::Arith;
    }
  }
  throw std::logic_error("unreachable");
}

/// Evaluates an arithmetic expression; hole references must have been
/// substituted away beforehand.
inline Rational eval_arith(const ExprPtr& e, std::span<const std::int64_t> vars) {
  switch (e->kind) {
    case ExprKind::Num:
      return e->num;
    case ExprKind::Var:
      return Rational(vars[static_cast<std::size_t>(e->index)]);
    case ExprKind::Hole:
      throw std::logic_error("hole reference '" + e->name + "' in evaluation");
    case ExprKind::Unary:
      if (e->un != UnOp::Neg) throw std::logic_error("boolean node in arithmetic context");
      return -eval_arith(e->lhs, vars);
    case ExprKind::Binary:
      switch (e->bin) {
        case BinOp::Add:
          return eval_arith(e->lhs, vars) + eval_arith(e->rhs, vars);
        case BinOp::Sub:
          return eval_arith(e->lhs, vars) - eval_arith(e->rhs, vars);
        case BinOp::Mul:
          return eval_arith(e->lhs, vars) * eval_arith(e->rhs, vars);
        default:
          throw std::logic_error("boolean node in arithmetic context");
      }
    default:
      throw std::logic_error("boolean node in arithmetic context");
  }
}

inline bool eval_bool(const ExprPtr& e, std::span<const std::int64_t> vars) {
  switch (e->kind) {
    case ExprKind::BoolLit:
      return e->bval;
    case ExprKind::Unary:
      if (e->un != UnOp::Not) throw std::logic_error("arithmetic node in boolean context");
      return !eval_bool(e->lhs, vars);
    case ExprKind::Binary:
      switch (e->bin) {
        case BinOp::And:
          return eval_bool(e->lhs, vars) && eval_bool(e->rhs, vars);
        case BinOp::Or:
          return eval_bool(e->lhs, vars) || eval_bool(e->rhs, vars);
        case BinOp::Implies:
          return !eval_bool(e->lhs, vars) || eval_bool(e->rhs, vars);
        case BinOp::Eq:
          return eval_arith(e->lhs, vars) == eval_arith(e->rhs, vars);
        case BinOp::Ne:
          return eval_arith(e->lhs, vars) != eval_arith(e->rhs, vars);
        case BinOp::Lt:
          return eval_arith(e->lhs, vars) < eval_arith(e->rhs, vars);
        case BinOp::Le:
          return eval_arith(e->lhs, vars) <= eval_arith(e->rhs, vars);
        case BinOp::Gt:
          return eval_arith(e->lhs, vars) > eval_arith(e->rhs, vars);
        case BinOp::Ge:
          return eval_arith(e->lhs, vars) >= eval_arith(e->rhs, vars);
        default:
          throw std::logic_error("arithmetic node in boolean context");
      }
    default:
      throw std::logic_error("arithmetic node in boolean context");
  }
}

/// Replaces every hole reference by the expression chosen for it.
inline ExprPtr substitute_holes(const ExprPtr& e, const std::vector<ExprPtr>& by_hole) {
  switch (e->kind) {
    case ExprKind::Num:
    case ExprKind::BoolLit:
    case ExprKind::Var:
      return e;
    case ExprKind::Hole:
      return by_hole.at(static_cast<std::size_t>(e->index));
    case ExprKind::Unary: {
      ExprPtr l = substitute_holes(e->lhs, by_hole);
      return l == e->lhs ? e : make_unary(e->un, l);
    }
    case ExprKind::Binary: {
      ExprPtr l = substitute_holes(e->lhs, by_hole);
      ExprPtr r = substitute_holes(e->rhs, by_hole);
      return (l == e->lhs && r == e->rhs) ? e : make_binary(e->bin, l, r);
    }
  }
  throw std::logic_error("unreachable");
}

inline void collect_holes(const ExprPtr& e, std::set<int>& out) {
  if (!e) return;
  if (e->kind == ExprKind::Hole) out.insert(e->index);
  if (e->lhs) collect_holes(e->lhs, out);
  if (e->rhs) collect_holes(e->rhs, out);
}

inline bool contains_hole(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::Hole) return true;
  return contains_hole(e->lhs) || contains_hole(e->rhs);
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Num:
      return a->num == b->num;
    case ExprKind::BoolLit:
      return a->bval == b->bval;
    case ExprKind::Var:
    case ExprKind::Hole:
      return a->index == b->index && a->name == b->name;
    case ExprKind::Unary:
      return a->un == b->un && expr_equal(a->lhs, b->lhs);
    case ExprKind::Binary:
      return a->bin == b->bin && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
  return false;
}

namespace detail {

inline int precedence(BinOp op) {
  switch (op) {
    case BinOp::Implies:
      return 1;
    case BinOp::Or:
      return 2;
    case BinOp::And:
      return 3;
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      return 4;
    case BinOp::Add:
    case BinOp::Sub:
      return 5;
    case BinOp::Mul:
      return 6;
  }
  return 0;
}

inline const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add:
      return "+";
    case BinOp::Sub:
      return "-";
    case BinOp::Mul:
      return "*";
    case BinOp::And:
      return "&";
    case BinOp::Or:
      return "|";
    case BinOp::Implies:
      return "=>";
    case BinOp::Eq:
      return "=";
    case BinOp::Ne:
      return "!=";
    case BinOp::Lt:
      return "<";
    case BinOp::Le:
      return "<=";
    case BinOp::Gt:
      return ">";
    case BinOp::Ge:
      return ">=";
  }
  return "?";
}

inline std::string rational_text(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string unparse_rec(const ExprPtr& e, int parent_prec) {
  switch (e->kind) {
    case ExprKind::Num:
      return rational_text(e->num);
    case ExprKind::BoolLit:
      return e->bval ? "true" : "false";
    case ExprKind::Var:
    case ExprKind::Hole:
      return e->name;
    case ExprKind::Unary: {
      std::string inner = unparse_rec(e->lhs, 7);
      return (e->un == UnOp::Neg ? "-" : "!") + inner;
    }
    case ExprKind::Binary: {
      int prec = precedence(e->bin);
      std::string text = unparse_rec(e->lhs, prec) + " " + op_text(e->bin) + " " +
                         unparse_rec(e->rhs, prec + 1);
      if (prec < parent_prec) return "(" + text + ")";
      return text;
    }
  }
  return "?";
}

}  // namespace detail

inline std::string unparse(const ExprPtr& e) { return detail::unparse_rec(e, 0); }

}  // namespace sketchmc
