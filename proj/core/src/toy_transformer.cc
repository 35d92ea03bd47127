// Copyright 2026 The plmneuron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plmneuron/toy_transformer.h"

#include <Eigen/Dense>

#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <utility>
#include <vector>

#include "plmneuron/errors.h"
#include "plmneuron/random.h"

namespace plmneuron {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::RowVectorXd;

struct LayerWeights {
  RowVec ln1_g, ln1_b;
  RowMat wq, wk, wv, wo;
  RowVec bq, bk, bv, bo;
  RowVec ln2_g, ln2_b;
  RowMat w1, w2;
  RowVec b1, b2;
};

struct ToyTransformer::Weights {
  RowMat tok_emb;  // vocab x d
  RowMat pos_emb;  // max_positions x d
  std::vector<LayerWeights> layers;
  RowVec lnf_g, lnf_b;
  RowMat lm_w;  // d x vocab
  RowVec lm_b;
};

namespace {

constexpr double kLayerNormEps = 1e-5;

// Describes one serialized array and how it is initialized.
struct ArrayInit {
  double std;    // > 0: N(0, std^2) draws
  double value;  // used when std == 0
};

using ArrayVisitor = std::function<void(double* data, std::size_t n, ArrayInit)>;

// Visits every weight array in file order.
void VisitArrays(ToyTransformer::Weights& w, const ModelConfig& c,
                 const ArrayVisitor& visit) {
  const double d_std = 1.0 / std::sqrt(static_cast<double>(c.hidden_dim));
  const double f_std = 1.0 / std::sqrt(static_cast<double>(c.ffn_dim));
  auto mat = [&](RowMat& m, ArrayInit init) {
    visit(m.data(), static_cast<std::size_t>(m.size()), init);
  };
  auto vec = [&](RowVec& v, ArrayInit init) {
    visit(v.data(), static_cast<std::size_t>(v.size()), init);
  };
  const ArrayInit ones{0.0, 1.0};
  const ArrayInit zeros{0.0, 0.0};
  mat(w.tok_emb, {1.0, 0.0});
  mat(w.pos_emb, {1.0, 0.0});
  for (LayerWeights& l : w.layers) {
    vec(l.ln1_g, ones);
    vec(l.ln1_b, zeros);
    mat(l.wq, {d_std, 0.0});
    vec(l.bq, zeros);
    mat(l.wk, {d_std, 0.0});
    vec(l.bk, zeros);
    mat(l.wv, {d_std, 0.0});
    vec(l.bv, zeros);
    mat(l.wo, {d_std, 0.0});
    vec(l.bo, zeros);
    vec(l.ln2_g, ones);
    vec(l.ln2_b, zeros);
    mat(l.w1, {d_std, 0.0});
    vec(l.b1, zeros);
    mat(l.w2, {f_std, 0.0});
    vec(l.b2, zeros);
  }
  vec(w.lnf_g, ones);
  vec(w.lnf_b, zeros);
  mat(w.lm_w, {d_std, 0.0});
  vec(w.lm_b, zeros);
}

std::shared_ptr<ToyTransformer::Weights> Allocate(const ModelConfig& c) {
  auto w = std::make_shared<ToyTransformer::Weights>();
  const int d = c.hidden_dim;
  const int f = c.ffn_dim;
  w->tok_emb.resize(c.vocab_size, d);
  w->pos_emb.resize(c.max_positions, d);
  w->layers.resize(c.num_layers);
  for (LayerWeights& l : w->layers) {
    l.ln1_g.resize(d);
    l.ln1_b.resize(d);
    l.wq.resize(d, d);
    l.wk.resize(d, d);
    l.wv.resize(d, d);
    l.wo.resize(d, d);
    l.bq.resize(d);
    l.bk.resize(d);
    l.bv.resize(d);
    l.bo.resize(d);
    l.ln2_g.resize(d);
    l.ln2_b.resize(d);
    l.w1.resize(d, f);
    l.b1.resize(f);
    l.w2.resize(f, d);
    l.b2.resize(d);
  }
  w->lnf_g.resize(d);
  w->lnf_b.resize(d);
  w->lm_w.resize(d, c.vocab_size);
  w->lm_b.resize(c.vocab_size);
  return w;
}

std::uint64_t CountDoubles(const ModelConfig& c) {
  const std::uint64_t d = c.hidden_dim, f = c.ffn_dim, v = c.vocab_size,
                      p = c.max_positions;
  const std::uint64_t per_layer = 4 * d + 4 * d * d + 4 * d + 2 * d * f + f + d;
  return v * d + p * d + c.num_layers * per_layer + 2 * d + d * v + v;
}

RowMat LayerNorm(const RowMat& x, const RowVec& g, const RowVec& b) {
  RowMat out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var = (x.row(r).array() - mean).square().mean();
    const double inv = 1.0 / std::sqrt(var + kLayerNormEps);
    out.row(r) = ((x.row(r).array() - mean) * inv * g.array() + b.array()).matrix();
  }
  return out;
}

double Gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0))); }

void SoftmaxRows(RowMat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mx = m.row(r).maxCoeff();
    m.row(r) = (m.row(r).array() - mx).exp().matrix();
    m.row(r) /= m.row(r).sum();
  }
}

// Little-endian writer that accumulates an FNV-1a checksum.
class ByteSink {
 public:
  void U32(std::uint32_t v) { Bytes(v, 4); }
  void U64(std::uint64_t v) { Bytes(v, 8); }
  void F64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    U64(bits);
  }
  void Raw(const char* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) Push(static_cast<unsigned char>(p[i]));
  }
  std::uint64_t checksum() const { return hash_; }
  const std::string& bytes() const { return buf_; }

 private:
  void Bytes(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) Push(static_cast<unsigned char>(v >> (8 * i)));
  }
  void Push(unsigned char c) {
    buf_.push_back(static_cast<char>(c));
    hash_ = (hash_ ^ c) * 0x100000001b3ULL;
  }
  std::string buf_;
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

class ByteSource {
 public:
  explicit ByteSource(const std::string& data) : data_(data) {}

  bool Has(std::size_t n) const { return data_.size() - pos_ >= n; }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t pos() const { return pos_; }

  std::uint64_t Read(int n) {
    if (!Has(n)) {
      throw WeightFileError(WeightFileError::Kind::kCorrupt,
                            "weight file truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  double F64() {
    const std::uint64_t bits = Read(8);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
};

std::uint64_t Fnv(const std::string& s, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h = (h ^ static_cast<unsigned char>(s[i])) * 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ToyTransformer::ToyTransformer(const ModelConfig& config) : config_(config) {
  config_.Validate();
  auto w = Allocate(config_);
  Rng rng(config_.seed);
  VisitArrays(*w, config_, [&](double* data, std::size_t n, ArrayInit init) {
    for (std::size_t i = 0; i < n; ++i) {
      data[i] = init.std > 0.0 ? rng.Normal() * init.std : init.value;
    }
  });
  weights_ = std::move(w);
}

ToyTransformer::ToyTransformer(const ModelConfig& config,
                               std::shared_ptr<const Weights> w)
    : config_(config), weights_(std::move(w)) {}

std::string ToyTransformer::id() const {
  return "toy-L" + std::to_string(config_.num_layers) + "-d" +
         std::to_string(config_.hidden_dim) + "-f" +
         std::to_string(config_.ffn_dim) + "-h" +
         std::to_string(config_.num_heads) + "-s" +
         std::to_string(config_.seed);
}

ForwardResult ToyTransformer::Forward(
    std::span<const int> tokens, const InterventionSpec& interventions) const {
  ValidateForwardInputs(config_, tokens, interventions);
  const Weights& w = *weights_;
  const int n = static_cast<int>(tokens.size());
  const int d = config_.hidden_dim;
  const int heads = config_.num_heads;
  const int hd = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(hd));

  ForwardResult result;
  result.activations = ActivationMap(config_.num_layers, n, config_.ffn_dim);

  RowMat h(n, d);
  for (int p = 0; p < n; ++p) {
    h.row(p) = w.tok_emb.row(tokens[p]) + w.pos_emb.row(p);
  }

  for (int l = 0; l < config_.num_layers; ++l) {
    const LayerWeights& lw = w.layers[l];
    const RowMat x = LayerNorm(h, lw.ln1_g, lw.ln1_b);
    const RowMat q = (x * lw.wq).rowwise() + lw.bq;
    const RowMat k = (x * lw.wk).rowwise() + lw.bk;
    const RowMat v = (x * lw.wv).rowwise() + lw.bv;
    RowMat attn(n, d);
    for (int head = 0; head < heads; ++head) {
      RowMat scores =
          q.middleCols(head * hd, hd) * k.middleCols(head * hd, hd).transpose();
      scores *= scale;
      SoftmaxRows(scores);
      attn.middleCols(head * hd, hd) = scores * v.middleCols(head * hd, hd);
    }
    h += (attn * lw.wo).rowwise() + lw.bo;

    const RowMat x2 = LayerNorm(h, lw.ln2_g, lw.ln2_b);
    RowMat u = ((x2 * lw.w1).rowwise() + lw.b1).unaryExpr(&Gelu);
    for (int p = 0; p < n; ++p) {
      for (int j = 0; j < config_.ffn_dim; ++j) {
        result.activations.at(l, p, j) = u(p, j);
      }
    }
    for (const Intervention& e : interventions.entries()) {
      if (e.neuron.layer != l) continue;
      for (int p = 0; p < n; ++p) {
        u(p, e.neuron.index) = e.a * u(p, e.neuron.index) + e.b;
      }
    }
    h += (u * lw.w2).rowwise() + lw.b2;
  }

  const RowMat hf = LayerNorm(h, w.lnf_g, w.lnf_b);
  const RowMat logits = (hf * w.lm_w).rowwise() + w.lm_b;
  result.logits = Matrix(n, config_.vocab_size);
  for (int p = 0; p < n; ++p) {
    for (int t = 0; t < config_.vocab_size; ++t) {
      result.logits(p, t) = logits(p, t);
    }
  }
  return result;
}

void ToyTransformer::Save(const std::filesystem::path& path) const {
  ByteSink sink;
  sink.Raw(kWeightMagic, 4);
  sink.U32(kWeightFormatVersion);
  sink.U32(static_cast<std::uint32_t>(config_.num_layers));
  sink.U32(static_cast<std::uint32_t>(config_.hidden_dim));
  sink.U32(static_cast<std::uint32_t>(config_.ffn_dim));
  sink.U32(static_cast<std::uint32_t>(config_.num_heads));
  sink.U32(static_cast<std::uint32_t>(config_.vocab_size));
  sink.U32(static_cast<std::uint32_t>(config_.max_positions));
  sink.U64(config_.seed);
  sink.U64(CountDoubles(config_));
  // VisitArrays takes a mutable reference but the sink only reads.
  auto& w = const_cast<Weights&>(*weights_);
  VisitArrays(w, config_, [&](double* data, std::size_t n, ArrayInit) {
    for (std::size_t i = 0; i < n; ++i) sink.F64(data[i]);
  });
  const std::uint64_t checksum = sink.checksum();
  sink.U64(checksum);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw WeightFileError(WeightFileError::Kind::kIo,
                          "cannot open " + path.string() + " for writing");
  }
  out.write(sink.bytes().data(), static_cast<std::streamsize>(sink.bytes().size()));
  if (!out) {
    throw WeightFileError(WeightFileError::Kind::kIo,
                          "write failed for " + path.string());
  }
}

ToyTransformer ToyTransformer::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw WeightFileError(WeightFileError::Kind::kIo,
                          "cannot open " + path.string());
  }
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  using Kind = WeightFileError::Kind;
  if (data.size() < 4) throw WeightFileError(Kind::kCorrupt, "weight file truncated");
  if (std::memcmp(data.data(), kWeightMagic, 4) != 0) {
    throw WeightFileError(Kind::kVersionMismatch,
                          "not a weight file (bad magic header)");
  }
  ByteSource src(data);
  src.Read(4);
  const auto version = static_cast<std::uint32_t>(src.Read(4));
  if (version != kWeightFormatVersion) {
    throw WeightFileError(Kind::kVersionMismatch,
                          "unsupported weight format version " +
                              std::to_string(version));
  }
  ModelConfig c;
  std::uint32_t dims[6];
  for (std::uint32_t& v : dims) {
    v = static_cast<std::uint32_t>(src.Read(4));
    if (v > (1u << 20)) throw WeightFileError(Kind::kCorrupt, "implausible dimension");
  }
  c.num_layers = static_cast<int>(dims[0]);
  c.hidden_dim = static_cast<int>(dims[1]);
  c.ffn_dim = static_cast<int>(dims[2]);
  c.num_heads = static_cast<int>(dims[3]);
  c.vocab_size = static_cast<int>(dims[4]);
  c.max_positions = static_cast<int>(dims[5]);
  c.seed = src.Read(8);
  try {
    c.Validate();
  } catch (const ModelError& e) {
    throw WeightFileError(Kind::kCorrupt, std::string("bad config block: ") + e.what());
  }
  const std::uint64_t count = src.Read(8);
  if (count != CountDoubles(c)) {
    throw WeightFileError(Kind::kCorrupt, "array size does not match config");
  }
  if (src.remaining() != count * 8 + 8) {
    throw WeightFileError(Kind::kCorrupt,
                          src.remaining() < count * 8 + 8
                              ? "weight file truncated"
                              : "trailing bytes after checksum");
  }
  auto w = Allocate(c);
  VisitArrays(*w, c, [&](double* data_ptr, std::size_t n, ArrayInit) {
    for (std::size_t i = 0; i < n; ++i) data_ptr[i] = src.F64();
  });
  const std::size_t body = src.pos();
  const std::uint64_t stored = src.Read(8);
  if (stored != Fnv(data, body)) {
    throw WeightFileError(Kind::kCorrupt, "checksum mismatch");
  }
  return ToyTransformer(c, std::move(w));
}

}  // namespace plmneuron
