#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jsgen/errors.hpp"

namespace jsgen::neural {

using Mat = Eigen::MatrixXd;

// Reverse-mode autodiff over Eigen matrices. Nodes are appended in forward
// order; backward() walks them in reverse. Vectors are column matrices.
// One tape per example (training) or per input (decoding); decoding never
// calls backward.
class Tape {
 public:
  struct Ref {
    int id = -1;
    bool valid() const { return id >= 0; }
  };

  Ref constant(Mat value);
  // Gradient is accumulated into *grad_out, which must outlive backward().
  Ref parameter(const Mat& value, Mat* grad_out);

  const Mat& value(Ref r) const { return nodes_[r.id].value; }

  Ref col(Ref m, int j);                           // d x 1 column of a d x n matrix
  Ref matvec(Ref w, Ref x);                        // (r x c) * (c x 1)
  Ref add(Ref a, Ref b);                           // same shape
  Ref concat(const std::vector<Ref>& parts);       // vertical stack
  Ref slice(Ref x, int offset, int rows);
  Ref tanh(Ref x);
  Ref sigmoid(Ref x);
  Ref mul(Ref a, Ref b);                           // elementwise
  Ref softmax(Ref x);                              // over a column vector
  Ref from_cols(const std::vector<Ref>& columns);  // d x n from n column vectors
  Ref mat_t_vec(Ref m, Ref x);                     // (d x n)^T * (d x 1) = n x 1
  Ref pick(Ref x, int index);                      // 1 x 1
  Ref log(Ref x);
  Ref neg(Ref x);
  Ref sum(Ref x);                                  // 1 x 1
  Ref add_all(const std::vector<Ref>& scalars);    // 1 x 1
  Ref scale(Ref x, Ref s);                         // x * s, s is 1 x 1
  Ref div_by(Ref x, Ref s);                        // x / s, s is 1 x 1
  Ref mask(Ref x, const Eigen::ArrayXd& keep);     // elementwise, constant mask
  // result = base; result[slots[i]] += src[i]
  Ref scatter_add(Ref base, Ref src, std::vector<int> slots);

  // Seeds d(loss)=1 and accumulates into every reachable parameter's grad.
  void backward(Ref loss);

  size_t node_count() const { return nodes_.size(); }

 private:
  enum class Op {
    Constant,
    Parameter,
    Col,
    MatVec,
    Add,
    Concat,
    Slice,
    Tanh,
    Sigmoid,
    Mul,
    Softmax,
    FromCols,
    MatTVec,
    Pick,
    Log,
    Neg,
    Sum,
    AddAll,
    Scale,
    DivBy,
    Mask,
    ScatterAdd,
  };

  struct Node {
    Op op;
    Mat value;
    Mat grad;
    bool needs_grad = false;
    int a = -1;
    int b = -1;
    std::vector<int> parents;  // Concat / FromCols / AddAll
    int i0 = 0;
    int i1 = 0;
    std::vector<int> slots;
    Eigen::ArrayXd keep;
    Mat* param_grad = nullptr;
  };

  Ref push(Node node);
  Mat& grad(int id);
  bool any_needs_grad(const std::vector<Ref>& refs) const;

  std::vector<Node> nodes_;
};

}  // namespace jsgen::neural
