#include "jsgen/neural/tape.hpp"

#include <cmath>

namespace jsgen::neural {

Tape::Ref Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Ref{static_cast<int>(nodes_.size() - 1)};
}

Mat& Tape::grad(int id) {
  Node& n = nodes_[id];
  if (n.grad.size() == 0) n.grad = Mat::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

bool Tape::any_needs_grad(const std::vector<Ref>& refs) const {
  for (Ref r : refs) {
    if (nodes_[r.id].needs_grad) return true;
  }
  return false;
}

Tape::Ref Tape::constant(Mat value) {
  Node n;
  n.op = Op::Constant;
  n.value = std::move(value);
  return push(std::move(n));
}

Tape::Ref Tape::parameter(const Mat& value, Mat* grad_out) {
  Node n;
  n.op = Op::Parameter;
  n.value = value;
  n.needs_grad = true;
  n.param_grad = grad_out;
  return push(std::move(n));
}

Tape::Ref Tape::col(Ref m, int j) {
  Node n;
  n.op = Op::Col;
  n.a = m.id;
  n.i0 = j;
  n.value = nodes_[m.id].value.col(j);
  n.needs_grad = nodes_[m.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::matvec(Ref w, Ref x) {
  Node n;
  n.op = Op::MatVec;
  n.a = w.id;
  n.b = x.id;
  n.value = nodes_[w.id].value * nodes_[x.id].value;
  n.needs_grad = nodes_[w.id].needs_grad || nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::add(Ref a, Ref b) {
  Node n;
  n.op = Op::Add;
  n.a = a.id;
  n.b = b.id;
  n.value = nodes_[a.id].value + nodes_[b.id].value;
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::concat(const std::vector<Ref>& parts) {
  long rows = 0;
  for (Ref r : parts) rows += nodes_[r.id].value.rows();
  Mat value(rows, 1);
  long at = 0;
  for (Ref r : parts) {
    const Mat& v = nodes_[r.id].value;
    value.middleRows(at, v.rows()) = v;
    at += v.rows();
  }
  Node n;
  n.op = Op::Concat;
  for (Ref r : parts) n.parents.push_back(r.id);
  n.value = std::move(value);
  n.needs_grad = any_needs_grad(parts);
  return push(std::move(n));
}

Tape::Ref Tape::slice(Ref x, int offset, int rows) {
  Node n;
  n.op = Op::Slice;
  n.a = x.id;
  n.i0 = offset;
  n.i1 = rows;
  n.value = nodes_[x.id].value.middleRows(offset, rows);
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::tanh(Ref x) {
  Node n;
  n.op = Op::Tanh;
  n.a = x.id;
  n.value = nodes_[x.id].value.array().tanh();
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::sigmoid(Ref x) {
  Node n;
  n.op = Op::Sigmoid;
  n.a = x.id;
  n.value = (1.0 / (1.0 + (-nodes_[x.id].value.array()).exp())).matrix();
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::mul(Ref a, Ref b) {
  Node n;
  n.op = Op::Mul;
  n.a = a.id;
  n.b = b.id;
  n.value = (nodes_[a.id].value.array() * nodes_[b.id].value.array()).matrix();
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::softmax(Ref x) {
  const Mat& v = nodes_[x.id].value;
  Eigen::ArrayXd shifted = v.array() - v.maxCoeff();
  Eigen::ArrayXd e = shifted.exp();
  Node n;
  n.op = Op::Softmax;
  n.a = x.id;
  n.value = (e / e.sum()).matrix();
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::from_cols(const std::vector<Ref>& columns) {
  long rows = nodes_[columns.front().id].value.rows();
  Mat value(rows, static_cast<long>(columns.size()));
  for (size_t i = 0; i < columns.size(); ++i) value.col(i) = nodes_[columns[i].id].value;
  Node n;
  n.op = Op::FromCols;
  for (Ref r : columns) n.parents.push_back(r.id);
  n.value = std::move(value);
  n.needs_grad = any_needs_grad(columns);
  return push(std::move(n));
}

Tape::Ref Tape::mat_t_vec(Ref m, Ref x) {
  Node n;
  n.op = Op::MatTVec;
  n.a = m.id;
  n.b = x.id;
  n.value = nodes_[m.id].value.transpose() * nodes_[x.id].value;
  n.needs_grad = nodes_[m.id].needs_grad || nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::pick(Ref x, int index) {
  Node n;
  n.op = Op::Pick;
  n.a = x.id;
  n.i0 = index;
  n.value = Mat::Constant(1, 1, nodes_[x.id].value(index, 0));
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::log(Ref x) {
  Node n;
  n.op = Op::Log;
  n.a = x.id;
  n.value = nodes_[x.id].value.array().log();
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::neg(Ref x) {
  Node n;
  n.op = Op::Neg;
  n.a = x.id;
  n.value = -nodes_[x.id].value;
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::sum(Ref x) {
  Node n;
  n.op = Op::Sum;
  n.a = x.id;
  n.value = Mat::Constant(1, 1, nodes_[x.id].value.sum());
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::add_all(const std::vector<Ref>& scalars) {
  double total = 0;
  for (Ref r : scalars) total += nodes_[r.id].value(0, 0);
  Node n;
  n.op = Op::AddAll;
  for (Ref r : scalars) n.parents.push_back(r.id);
  n.value = Mat::Constant(1, 1, total);
  n.needs_grad = any_needs_grad(scalars);
  return push(std::move(n));
}

Tape::Ref Tape::scale(Ref x, Ref s) {
  Node n;
  n.op = Op::Scale;
  n.a = x.id;
  n.b = s.id;
  n.value = nodes_[x.id].value * nodes_[s.id].value(0, 0);
  n.needs_grad = nodes_[x.id].needs_grad || nodes_[s.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::div_by(Ref x, Ref s) {
  Node n;
  n.op = Op::DivBy;
  n.a = x.id;
  n.b = s.id;
  n.value = nodes_[x.id].value / nodes_[s.id].value(0, 0);
  n.needs_grad = nodes_[x.id].needs_grad || nodes_[s.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::mask(Ref x, const Eigen::ArrayXd& keep) {
  Node n;
  n.op = Op::Mask;
  n.a = x.id;
  n.keep = keep;
  n.value = (nodes_[x.id].value.col(0).array() * keep).matrix();
  n.needs_grad = nodes_[x.id].needs_grad;
  return push(std::move(n));
}

Tape::Ref Tape::scatter_add(Ref base, Ref src, std::vector<int> slots) {
  Mat value = nodes_[base.id].value;
  const Mat& s = nodes_[src.id].value;
  for (size_t i = 0; i < slots.size(); ++i) value(slots[i], 0) += s(static_cast<long>(i), 0);
  Node n;
  n.op = Op::ScatterAdd;
  n.a = base.id;
  n.b = src.id;
  n.slots = std::move(slots);
  n.value = std::move(value);
  n.needs_grad = nodes_[base.id].needs_grad || nodes_[src.id].needs_grad;
  return push(std::move(n));
}

void Tape::backward(Ref loss) {
  if (nodes_[loss.id].value.size() != 1) throw Error("backward needs a scalar loss");
  grad(loss.id)(0, 0) = 1.0;
  for (int id = loss.id; id >= 0; --id) {
    Node& n = nodes_[id];
    if (!n.needs_grad || n.grad.size() == 0) continue;
    const Mat& g = n.grad;
    switch (n.op) {
      case Op::Constant:
        break;
      case Op::Parameter:
        *n.param_grad += g;
        break;
      case Op::Col:
        if (nodes_[n.a].needs_grad) grad(n.a).col(n.i0) += g;
        break;
      case Op::MatVec:
        if (nodes_[n.a].needs_grad) grad(n.a) += g * nodes_[n.b].value.transpose();
        if (nodes_[n.b].needs_grad) grad(n.b) += nodes_[n.a].value.transpose() * g;
        break;
      case Op::Add:
        if (nodes_[n.a].needs_grad) grad(n.a) += g;
        if (nodes_[n.b].needs_grad) grad(n.b) += g;
        break;
      case Op::Concat: {
        long at = 0;
        for (int pid : n.parents) {
          long rows = nodes_[pid].value.rows();
          if (nodes_[pid].needs_grad) grad(pid) += g.middleRows(at, rows);
          at += rows;
        }
        break;
      }
      case Op::Slice:
        if (nodes_[n.a].needs_grad) grad(n.a).middleRows(n.i0, n.i1) += g;
        break;
      case Op::Tanh:
        if (nodes_[n.a].needs_grad) {
          grad(n.a).array() += (1.0 - n.value.array().square()) * g.array();
        }
        break;
      case Op::Sigmoid:
        if (nodes_[n.a].needs_grad) {
          grad(n.a).array() += n.value.array() * (1.0 - n.value.array()) * g.array();
        }
        break;
      case Op::Mul:
        if (nodes_[n.a].needs_grad) grad(n.a).array() += nodes_[n.b].value.array() * g.array();
        if (nodes_[n.b].needs_grad) grad(n.b).array() += nodes_[n.a].value.array() * g.array();
        break;
      case Op::Softmax:
        if (nodes_[n.a].needs_grad) {
          double dot = (n.value.array() * g.array()).sum();
          grad(n.a).array() += n.value.array() * (g.array() - dot);
        }
        break;
      case Op::FromCols:
        for (size_t i = 0; i < n.parents.size(); ++i) {
          if (nodes_[n.parents[i]].needs_grad) grad(n.parents[i]) += g.col(static_cast<long>(i));
        }
        break;
      case Op::MatTVec:
        if (nodes_[n.a].needs_grad) grad(n.a) += nodes_[n.b].value * g.transpose();
        if (nodes_[n.b].needs_grad) grad(n.b) += nodes_[n.a].value * g;
        break;
      case Op::Pick:
        if (nodes_[n.a].needs_grad) grad(n.a)(n.i0, 0) += g(0, 0);
        break;
      case Op::Log:
        if (nodes_[n.a].needs_grad) {
          grad(n.a).array() += g.array() / nodes_[n.a].value.array();
        }
        break;
      case Op::Neg:
        if (nodes_[n.a].needs_grad) grad(n.a) -= g;
        break;
      case Op::Sum:
        if (nodes_[n.a].needs_grad) grad(n.a).array() += g(0, 0);
        break;
      case Op::AddAll:
        for (int pid : n.parents) {
          if (nodes_[pid].needs_grad) grad(pid)(0, 0) += g(0, 0);
        }
        break;
      case Op::Scale:
        if (nodes_[n.a].needs_grad) grad(n.a) += g * nodes_[n.b].value(0, 0);
        if (nodes_[n.b].needs_grad) {
          grad(n.b)(0, 0) += (nodes_[n.a].value.array() * g.array()).sum();
        }
        break;
      case Op::DivBy: {
        double s = nodes_[n.b].value(0, 0);
        if (nodes_[n.a].needs_grad) grad(n.a) += g / s;
        if (nodes_[n.b].needs_grad) {
          grad(n.b)(0, 0) -= (nodes_[n.a].value.array() * g.array()).sum() / (s * s);
        }
        break;
      }
      case Op::Mask:
        if (nodes_[n.a].needs_grad) {
          grad(n.a).col(0).array() += g.col(0).array() * n.keep;
        }
        break;
      case Op::ScatterAdd:
        if (nodes_[n.a].needs_grad) grad(n.a) += g;
        if (nodes_[n.b].needs_grad) {
          Mat& gb = grad(n.b);
          for (size_t i = 0; i < n.slots.size(); ++i) {
            gb(static_cast<long>(i), 0) += g(n.slots[i], 0);
          }
        }
        break;
    }
  }
}

}  // namespace jsgen::neural
