#include <sstream>

#include "jsgen/jsfront.hpp"

namespace jsgen {

namespace {

// Precedence levels; only relative order matters. Conditional is lowest.
constexpr int kPrecConditional = 2;
constexpr int kPrecOr = 3;
constexpr int kPrecAnd = 4;
constexpr int kPrecEquality = 8;
constexpr int kPrecRelational = 9;
constexpr int kPrecAdditive = 11;
constexpr int kPrecMultiplicative = 12;
constexpr int kPrecUnary = 14;
constexpr int kPrecPostfix = 17;
constexpr int kPrecPrimary = 20;

int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::StrictEqual:
    case BinaryOp::NotStrictEqual:
    case BinaryOp::Equal:
    case BinaryOp::NotEqual:
      return kPrecEquality;
    case BinaryOp::Less:
    case BinaryOp::LessEqual:
    case BinaryOp::Greater:
    case BinaryOp::GreaterEqual:
      return kPrecRelational;
    case BinaryOp::Plus:
    case BinaryOp::Minus:
      return kPrecAdditive;
    default:
      return kPrecMultiplicative;
  }
}

int node_prec(const ConcreteNode& n) {
  switch (n.kind) {
    case NodeKind::Conditional: return kPrecConditional;
    case NodeKind::Logical: return n.logical_op == LogicalOp::Or ? kPrecOr : kPrecAnd;
    case NodeKind::Binary: return binary_prec(n.binary_op);
    case NodeKind::Unary: return kPrecUnary;
    case NodeKind::StaticMember:
    case NodeKind::ComputedMember:
    case NodeKind::Call:
      return kPrecPostfix;
    default:
      return kPrecPrimary;
  }
}

void escape_string_into(std::ostream& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '\\': out << "\\\\"; break;
      case '\'': out << "\\'"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default: out << c;
    }
  }
}

void escape_quasi_into(std::ostream& out, const std::string& s) {
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\') out << "\\\\";
    else if (c == '`') out << "\\`";
    else if (c == '$' && i + 1 < s.size() && s[i + 1] == '{') out << "\\$";
    else out << c;
  }
}

class Printer {
 public:
  std::string print(const ConcreteNode& root) {
    emit(root, 0);
    return out_.str();
  }

 private:
  void emit(const ConcreteNode& n, int min_prec) {
    bool parens = node_prec(n) < min_prec;
    if (parens) out_ << "(";
    switch (n.kind) {
      case NodeKind::Block:
        out_ << "{";
        for (const auto& stmt : n.children) emit(*stmt, 0);
        out_ << "}";
        break;
      case NodeKind::ExpressionStmt:
        emit(*n.children[0], kPrecConditional);
        out_ << ";";
        break;
      case NodeKind::Break:
        out_ << "break";
        if (!n.children.empty()) {
          out_ << " ";
          emit(*n.children[0], kPrecConditional);
        }
        out_ << ";";
        break;
      case NodeKind::Conditional:
        emit(*n.children[0], kPrecOr);
        out_ << " ? ";
        emit(*n.children[1], kPrecConditional);
        out_ << " : ";
        emit(*n.children[2], kPrecConditional);
        break;
      case NodeKind::Logical: {
        int prec = node_prec(n);
        emit(*n.children[0], prec);
        out_ << " " << logical_op_text(n.logical_op) << " ";
        emit(*n.children[1], prec + 1);
        break;
      }
      case NodeKind::Binary: {
        int prec = node_prec(n);
        emit(*n.children[0], prec);
        out_ << " " << binary_op_text(n.binary_op) << " ";
        emit(*n.children[1], prec + 1);
        break;
      }
      case NodeKind::Unary:
        out_ << unary_op_text(n.unary_op);
        emit(*n.children[0], kPrecUnary + 1);  // never fuse into -- or !!-style runs
        break;
      case NodeKind::StaticMember:
        emit_member_base(*n.children[0]);
        out_ << "." << n.text;
        break;
      case NodeKind::ComputedMember:
        emit_member_base(*n.children[0]);
        out_ << "[";
        emit(*n.children[1], kPrecConditional);
        out_ << "]";
        break;
      case NodeKind::Call:
        emit_member_base(*n.children[0]);
        out_ << "(";
        for (size_t i = 1; i < n.children.size(); ++i) {
          if (i > 1) out_ << ", ";
          emit(*n.children[i], kPrecConditional);
        }
        out_ << ")";
        break;
      case NodeKind::Identifier:
        out_ << n.text;
        break;
      case NodeKind::Literal:
        switch (n.literal_kind) {
          case LiteralKind::String:
            out_ << "'";
            escape_string_into(out_, n.text);
            out_ << "'";
            break;
          case LiteralKind::Number:
          case LiteralKind::Bool:
            out_ << n.text;
            break;
          case LiteralKind::Null:
            out_ << "null";
            break;
        }
        break;
      case NodeKind::Template:
        out_ << "`";
        for (size_t i = 0; i < n.quasis.size(); ++i) {
          escape_quasi_into(out_, n.quasis[i]);
          if (i < n.children.size()) {
            out_ << "${";
            emit(*n.children[i], kPrecConditional);
            out_ << "}";
          }
        }
        out_ << "`";
        break;
    }
    if (parens) out_ << ")";
  }

  // `5.toString()` does not lex as a member access; numeric bases get parens.
  void emit_member_base(const ConcreteNode& base) {
    if (base.kind == NodeKind::Literal && base.literal_kind == LiteralKind::Number) {
      out_ << "(";
      emit(base, 0);
      out_ << ")";
    } else {
      emit(base, kPrecPostfix);
    }
  }

  std::ostringstream out_;
};

}  // namespace

std::string print_js(const ConcretePtr& node) { return Printer().print(*node); }

}  // namespace jsgen
