#include "fauxgraph/autodiff.hpp"

#include <algorithm>
#include <cmath>

#include "fauxgraph/error.hpp"

namespace fauxgraph::ad {

const DenseMatrix& Var::value() const {
  if (tape_ == nullptr) throw Error("use of an unbound Var");
  return tape_->value(id_);
}

const DenseMatrix& Var::grad() const {
  if (tape_ == nullptr) throw Error("use of an unbound Var");
  return tape_->grad(id_);
}

Var Tape::parameter(DenseMatrix value) {
  nodes_.push_back(Node{"parameter", std::move(value), {}, {}, {}, true, false});
  return Var(this, nodes_.size() - 1);
}

Var Tape::constant(DenseMatrix value) {
  nodes_.push_back(Node{"constant", std::move(value), {}, {}, {}, false, false});
  return Var(this, nodes_.size() - 1);
}

Var Tape::record(std::string op, DenseMatrix value, std::vector<std::size_t> inputs, BackwardFn backward) {
  bool needs = false;
  for (auto id : inputs) {
    if (id >= nodes_.size()) throw Error("operation '" + op + "' references an unknown node");
    needs = needs || nodes_[id].requires_grad;
  }
  nodes_.push_back(Node{std::move(op), std::move(value), {}, std::move(inputs),
                        needs ? std::move(backward) : BackwardFn{}, needs, false});
  return Var(this, nodes_.size() - 1);
}

void Tape::backward(Var loss) {
  if (loss.tape() != this) throw Error("backward() called with a Var from another tape");
  const auto& out = nodes_.at(loss.id()).value;
  if (out.rows() != 1 || out.cols() != 1) {
    throw DimensionError("backward() needs a 1x1 output, got " + out.shape_string());
  }
  for (auto& n : nodes_) {
    n.grad = DenseMatrix();
    n.grad_ready = false;
  }
  if (nodes_[loss.id()].requires_grad) {
    nodes_[loss.id()].grad = DenseMatrix(1, 1, 1.0);
    for (std::size_t id = loss.id() + 1; id-- > 0;) {
      auto& n = nodes_[id];
      if (n.backward && !n.grad.empty()) n.backward(*this, id);
    }
  }
  for (auto& n : nodes_) {
    if (n.grad.empty()) n.grad = DenseMatrix(n.value.rows(), n.value.cols());
    n.grad_ready = true;
  }
}

const DenseMatrix& Tape::grad(std::size_t id) const {
  const auto& n = nodes_.at(id);
  if (!n.grad_ready) throw Error("gradient of node " + std::to_string(id) + " requested before backward()");
  return n.grad;
}

DenseMatrix& Tape::grad_buffer(std::size_t id) {
  auto& n = nodes_.at(id);
  if (n.grad.empty()) n.grad = DenseMatrix(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::accumulate(std::size_t id, const DenseMatrix& delta) {
  auto& n = nodes_.at(id);
  if (!n.requires_grad) return;
  if (delta.rows() != n.value.rows() || delta.cols() != n.value.cols()) {
    throw DimensionError("gradient " + delta.shape_string() + " does not match node " + n.value.shape_string());
  }
  if (n.grad.empty()) {
    n.grad = delta;
    return;
  }
  auto g = n.grad.values();
  auto d = delta.values();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += d[i];
}

namespace {

Tape& same_tape(Var a, Var b, const char* op) {
  if (!a.valid() || a.tape() != b.tape()) throw Error(std::string(op) + ": operands on different tapes");
  return *a.tape();
}

Tape& tape_of(Var a, const char* op) {
  if (!a.valid()) throw Error(std::string(op) + ": unbound operand");
  return *a.tape();
}

void check_segments(std::span<const Segment> segments, std::size_t rows, const char* op) {
  std::size_t next = 0;
  for (const auto& s : segments) {
    if (s.start != next || s.length == 0) {
      throw DimensionError(std::string(op) + ": segments must be non-empty and contiguous");
    }
    next += s.length;
  }
  if (next != rows) {
    throw DimensionError(std::string(op) + ": segments cover " + std::to_string(next) + " rows, operand has " +
                         std::to_string(rows));
  }
}

}  // namespace

Var spmm(const CsrMatrix& a, Var h) { return spmm(std::make_shared<const CsrMatrix>(a), std::move(h)); }

Var spmm(std::shared_ptr<const CsrMatrix> a, Var h) {
  auto& tape = tape_of(h, "spmm");
  DenseMatrix out = a->multiply(h.value());
  const auto hid = h.id();
  return tape.record("spmm", std::move(out), {hid}, [a, hid](Tape& t, std::size_t self) {
    t.accumulate(hid, a->transpose_multiply(t.grad_buffer(self)));
  });
}

Var matmul(Var x, Var y) {
  auto& tape = same_tape(x, y, "matmul");
  DenseMatrix out = multiply(x.value(), y.value());
  const auto xid = x.id();
  const auto yid = y.id();
  return tape.record("matmul", std::move(out), {xid, yid}, [xid, yid](Tape& t, std::size_t self) {
    const auto& up = t.grad_buffer(self);
    if (t.requires_grad(xid)) t.accumulate(xid, multiply_nt(up, t.value(yid)));
    if (t.requires_grad(yid)) t.accumulate(yid, multiply_tn(t.value(xid), up));
  });
}

Var relu(Var x) {
  auto& tape = tape_of(x, "relu");
  DenseMatrix out = x.value();
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  const auto xid = x.id();
  return tape.record("relu", std::move(out), {xid}, [xid](Tape& t, std::size_t self) {
    DenseMatrix g = t.grad_buffer(self);
    const auto in = t.value(xid).values();
    auto gv = g.values();
    for (std::size_t i = 0; i < gv.size(); ++i) {
      if (!(in[i] > 0.0)) gv[i] = 0.0;
    }
    t.accumulate(xid, g);
  });
}

Var row_softmax(Var x) {
  auto& tape = tape_of(x, "row_softmax");
  DenseMatrix out = x.value();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    if (row.empty()) continue;
    const double peak = *std::max_element(row.begin(), row.end());
    double total = 0.0;
    for (double& v : row) {
      v = std::exp(v - peak);
      total += v;
    }
    for (double& v : row) v /= total;
  }
  const auto xid = x.id();
  return tape.record("row_softmax", std::move(out), {xid}, [xid](Tape& t, std::size_t self) {
    const auto& up = t.grad_buffer(self);
    const auto& s = t.value(self);
    DenseMatrix g(s.rows(), s.cols());
    for (std::size_t r = 0; r < s.rows(); ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < s.cols(); ++c) dot += up(r, c) * s(r, c);
      for (std::size_t c = 0; c < s.cols(); ++c) g(r, c) = s(r, c) * (up(r, c) - dot);
    }
    t.accumulate(xid, g);
  });
}

Var mean_rows(Var x) {
  if (x.rows() == 0) throw DimensionError("mean_rows of a matrix with zero rows");
  const Segment whole{0, x.rows()};
  return segment_mean(x, std::span<const Segment>(&whole, 1));
}

Var segment_mean(Var x, std::span<const Segment> segments) {
  auto& tape = tape_of(x, "segment_mean");
  check_segments(segments, x.rows(), "segment_mean");
  const auto& in = x.value();
  DenseMatrix out(segments.size(), in.cols());
  for (std::size_t m = 0; m < segments.size(); ++m) {
    auto o = out.row(m);
    for (std::size_t r = segments[m].start; r < segments[m].start + segments[m].length; ++r) {
      const auto row = in.row(r);
      for (std::size_t c = 0; c < o.size(); ++c) o[c] += row[c];
    }
    const double inv = 1.0 / static_cast<double>(segments[m].length);
    for (double& v : o) v *= inv;
  }
  const auto xid = x.id();
  std::vector<Segment> segs(segments.begin(), segments.end());
  return tape.record("segment_mean", std::move(out), {xid}, [xid, segs](Tape& t, std::size_t self) {
    const auto& up = t.grad_buffer(self);
    DenseMatrix g(t.value(xid).rows(), up.cols());
    for (std::size_t m = 0; m < segs.size(); ++m) {
      const double inv = 1.0 / static_cast<double>(segs[m].length);
      for (std::size_t r = segs[m].start; r < segs[m].start + segs[m].length; ++r) {
        for (std::size_t c = 0; c < up.cols(); ++c) g(r, c) = up(m, c) * inv;
      }
    }
    t.accumulate(xid, g);
  });
}

Var add_row_bias(Var x, Var bias) {
  auto& tape = same_tape(x, bias, "add_row_bias");
  if (bias.rows() != 1 || bias.cols() != x.cols()) {
    throw DimensionError("add_row_bias: bias " + bias.value().shape_string() + " for input " +
                         x.value().shape_string());
  }
  DenseMatrix out = x.value();
  const auto b = bias.value().row(0);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += b[c];
  }
  const auto xid = x.id();
  const auto bid = bias.id();
  return tape.record("add_row_bias", std::move(out), {xid, bid}, [xid, bid](Tape& t, std::size_t self) {
    const auto& up = t.grad_buffer(self);
    if (t.requires_grad(xid)) t.accumulate(xid, up);
    if (t.requires_grad(bid)) {
      DenseMatrix g(1, up.cols());
      for (std::size_t r = 0; r < up.rows(); ++r) {
        for (std::size_t c = 0; c < up.cols(); ++c) g(0, c) += up(r, c);
      }
      t.accumulate(bid, g);
    }
  });
}

Var select_column(Var x, std::size_t j) {
  auto& tape = tape_of(x, "select_column");
  if (j >= x.cols()) throw DimensionError("select_column: column " + std::to_string(j) + " of " +
                                          x.value().shape_string());
  DenseMatrix out(x.rows(), 1);
  for (std::size_t r = 0; r < x.rows(); ++r) out(r, 0) = x.value()(r, j);
  const auto xid = x.id();
  return tape.record("select_column", std::move(out), {xid}, [xid, j](Tape& t, std::size_t self) {
    const auto& up = t.grad_buffer(self);
    DenseMatrix g(t.value(xid).rows(), t.value(xid).cols());
    for (std::size_t r = 0; r < up.rows(); ++r) g(r, j) = up(r, 0);
    t.accumulate(xid, g);
  });
}

Var sum(Var x) {
  auto& tape = tape_of(x, "sum");
  double total = 0.0;
  for (double v : x.value().values()) total += v;
  const auto xid = x.id();
  return tape.record("sum", DenseMatrix(1, 1, total), {xid}, [xid](Tape& t, std::size_t self) {
    const auto& in = t.value(xid);
    t.accumulate(xid, DenseMatrix(in.rows(), in.cols(), t.grad_buffer(self)(0, 0)));
  });
}

Var segment_transpose_matmul(Var c, Var x, std::span<const Segment> segments) {
  auto& tape = same_tape(c, x, "segment_transpose_matmul");
  if (c.rows() != x.rows()) {
    throw DimensionError("segment_transpose_matmul: " + c.value().shape_string() + " vs " + x.value().shape_string());
  }
  check_segments(segments, c.rows(), "segment_transpose_matmul");
  const std::size_t k = c.cols();
  const std::size_t d = x.cols();
  const auto& cv = c.value();
  const auto& xv = x.value();
  DenseMatrix out(segments.size() * k, d);
  for (std::size_t m = 0; m < segments.size(); ++m) {
    for (std::size_t r = segments[m].start; r < segments[m].start + segments[m].length; ++r) {
      const auto xr = xv.row(r);
      for (std::size_t i = 0; i < k; ++i) {
        const double a = cv(r, i);
        double* o = out.row(m * k + i).data();
        for (std::size_t j = 0; j < d; ++j) o[j] += a * xr[j];
      }
    }
  }
  const auto cid = c.id();
  const auto xid = x.id();
  std::vector<Segment> segs(segments.begin(), segments.end());
  return tape.record(
      "segment_transpose_matmul", std::move(out), {cid, xid}, [cid, xid, segs, k, d](Tape& t, std::size_t self) {
        const auto& up = t.grad_buffer(self);
        const auto& cv = t.value(cid);
        const auto& xv = t.value(xid);
        DenseMatrix gc(cv.rows(), cv.cols());
        DenseMatrix gx(xv.rows(), xv.cols());
        for (std::size_t m = 0; m < segs.size(); ++m) {
          for (std::size_t r = segs[m].start; r < segs[m].start + segs[m].length; ++r) {
            const auto xr = xv.row(r);
            auto gxr = gx.row(r);
            for (std::size_t i = 0; i < k; ++i) {
              const auto ur = up.row(m * k + i);
              double acc = 0.0;
              for (std::size_t j = 0; j < d; ++j) {
                acc += xr[j] * ur[j];
                gxr[j] += cv(r, i) * ur[j];
              }
              gc(r, i) = acc;
            }
          }
        }
        if (t.requires_grad(cid)) t.accumulate(cid, gc);
        if (t.requires_grad(xid)) t.accumulate(xid, gx);
      });
}

Var segment_matmul(Var a, Var h, std::span<const Segment> segments) {
  auto& tape = same_tape(a, h, "segment_matmul");
  if (a.rows() != h.rows()) {
    throw DimensionError("segment_matmul: " + a.value().shape_string() + " vs " + h.value().shape_string());
  }
  check_segments(segments, a.rows(), "segment_matmul");
  for (const auto& s : segments) {
    if (s.length > a.cols()) throw DimensionError("segment_matmul: block wider than the stacked matrix");
  }
  const auto& av = a.value();
  const auto& hv = h.value();
  const std::size_t d = hv.cols();
  DenseMatrix out(hv.rows(), d);
  for (const auto& s : segments) {
    for (std::size_t i = 0; i < s.length; ++i) {
      double* o = out.row(s.start + i).data();
      for (std::size_t k = 0; k < s.length; ++k) {
        const double w = av(s.start + i, k);
        const double* hr = hv.row(s.start + k).data();
        for (std::size_t j = 0; j < d; ++j) o[j] += w * hr[j];
      }
    }
  }
  const auto aid = a.id();
  const auto hid = h.id();
  std::vector<Segment> segs(segments.begin(), segments.end());
  return tape.record("segment_matmul", std::move(out), {aid, hid}, [aid, hid, segs, d](Tape& t, std::size_t self) {
    const auto& up = t.grad_buffer(self);
    const auto& av = t.value(aid);
    const auto& hv = t.value(hid);
    DenseMatrix ga(av.rows(), av.cols());
    DenseMatrix gh(hv.rows(), hv.cols());
    for (const auto& s : segs) {
      for (std::size_t i = 0; i < s.length; ++i) {
        const auto ur = up.row(s.start + i);
        for (std::size_t k = 0; k < s.length; ++k) {
          const auto hr = hv.row(s.start + k);
          auto ghr = gh.row(s.start + k);
          const double w = av(s.start + i, k);
          double acc = 0.0;
          for (std::size_t j = 0; j < d; ++j) {
            acc += ur[j] * hr[j];
            ghr[j] += w * ur[j];
          }
          ga(s.start + i, k) = acc;
        }
      }
    }
    if (t.requires_grad(aid)) t.accumulate(aid, ga);
    if (t.requires_grad(hid)) t.accumulate(hid, gh);
  });
}

namespace {

double clamp_probability(double p) { return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp); }

void check_labels(std::size_t n, std::span<const int> labels) {
  if (labels.size() != n) {
    throw DimensionError("cross-entropy: " + std::to_string(n) + " probabilities vs " +
                         std::to_string(labels.size()) + " labels");
  }
  if (n == 0) throw DimensionError("cross-entropy of an empty batch");
  for (int y : labels) {
    if (y != 0 && y != 1) throw DataError("cross-entropy labels must be 0 or 1");
  }
}

}  // namespace

double binary_cross_entropy(std::span<const double> probabilities, std::span<const int> labels) {
  check_labels(probabilities.size(), labels);
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = clamp_probability(probabilities[i]);
    total += labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return -total / static_cast<double>(labels.size());
}

Var cross_entropy_loss(Var probabilities, std::span<const int> labels) {
  auto& tape = tape_of(probabilities, "cross_entropy_loss");
  if (probabilities.cols() != 1) {
    throw DimensionError("cross-entropy expects an Nx1 input, got " + probabilities.value().shape_string());
  }
  const double value = binary_cross_entropy(probabilities.value().values(), labels);
  const auto pid = probabilities.id();
  std::vector<int> y(labels.begin(), labels.end());
  return tape.record("cross_entropy", DenseMatrix(1, 1, value), {pid}, [pid, y](Tape& t, std::size_t self) {
    const double up = t.grad_buffer(self)(0, 0);
    const auto& p = t.value(pid);
    const double n = static_cast<double>(y.size());
    DenseMatrix g(p.rows(), 1);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double q = clamp_probability(p(i, 0));
      g(i, 0) = up * (q - y[i]) / (n * q * (1.0 - q));
    }
    t.accumulate(pid, g);
  });
}

}  // namespace fauxgraph::ad
