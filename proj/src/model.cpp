#include "hopse/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "hopse/detail/binio.hpp"

namespace hopse {

namespace {

void check_finite(const Eigen::MatrixXd& x, const char* what) {
    if (!x.allFinite()) throw ShapeError(std::string(what) + " contains non-finite values");
}

Eigen::MatrixXd layer_norm(const Eigen::MatrixXd& s) {
    Eigen::MatrixXd out(s.rows(), s.cols());
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
        double mu = s.row(r).mean();
        double var = (s.row(r).array() - mu).square().mean();
        out.row(r) = (s.row(r).array() - mu) / std::sqrt(var + MlpBlock::kLnEpsilon);
    }
    return out;
}

Eigen::MatrixXd leaky(const Eigen::MatrixXd& n) {
    return n.unaryExpr([](double v) { return v >= 0 ? v : MlpBlock::kLeakySlope * v; });
}

struct BlockCache {
    std::vector<Eigen::MatrixXd> inputs;   // x^(0)..x^(L)
    std::vector<Eigen::MatrixXd> pre_norm; // s^(1)..s^(L)
    std::vector<Eigen::MatrixXd> normed;   // LayerNorm(s)
    Eigen::MatrixXd x_orig;                // input before projection
};

Eigen::MatrixXd block_forward(const MlpBlock& block, const Eigen::MatrixXd& x,
                              BlockCache* cache) {
    if (static_cast<int>(x.cols()) != block.in_dim())
        throw ShapeError("block expects " + std::to_string(block.in_dim()) +
                         " input columns, got " + std::to_string(x.cols()));
    if (cache) cache->x_orig = x;
    Eigen::MatrixXd cur = block.has_projection() ? Eigen::MatrixXd(x * block.input_proj) : x;
    if (cache) cache->inputs.push_back(cur);
    for (int l = 0; l < block.depth(); ++l) {
        Eigen::MatrixXd s = cur * block.weights[static_cast<size_t>(l)];
        s.rowwise() += block.biases[static_cast<size_t>(l)].transpose();
        s += cur;
        Eigen::MatrixXd n = layer_norm(s);
        cur = leaky(n);
        if (cache) {
            cache->pre_norm.push_back(std::move(s));
            cache->normed.push_back(std::move(n));
            cache->inputs.push_back(cur);
        }
    }
    return cur;
}

struct BlockGrads {
    Eigen::MatrixXd input_proj;
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    static BlockGrads zeros_like(const MlpBlock& b) {
        BlockGrads g;
        g.input_proj = Eigen::MatrixXd::Zero(b.input_proj.rows(), b.input_proj.cols());
        for (const auto& w : b.weights) g.weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
        for (const auto& v : b.biases) g.biases.push_back(Eigen::VectorXd::Zero(v.size()));
        return g;
    }
};

// Gradient of LeakyReLU(LayerNorm(xW + b + x)) stacks, returning the
// gradient with respect to the block's original input.
Eigen::MatrixXd block_backward(const MlpBlock& block, const BlockCache& cache,
                               const Eigen::MatrixXd& dout, BlockGrads& grads) {
    Eigen::MatrixXd dcur = dout;
    for (int l = block.depth() - 1; l >= 0; --l) {
        const auto& n = cache.normed[static_cast<size_t>(l)];
        const auto& s = cache.pre_norm[static_cast<size_t>(l)];
        const auto& x_prev = cache.inputs[static_cast<size_t>(l)];

        Eigen::MatrixXd dn =
            dcur.array() * n.unaryExpr([](double v) {
                               return v >= 0 ? 1.0 : MlpBlock::kLeakySlope;
                           }).array();
        Eigen::MatrixXd ds(dn.rows(), dn.cols());
        for (Eigen::Index r = 0; r < s.rows(); ++r) {
            double mu = s.row(r).mean();
            double var = (s.row(r).array() - mu).square().mean();
            double inv = 1.0 / std::sqrt(var + MlpBlock::kLnEpsilon);
            Eigen::ArrayXd nr = n.row(r).transpose().array();
            Eigen::ArrayXd dnr = dn.row(r).transpose().array();
            double mean_dn = dnr.mean();
            double mean_dn_n = (dnr * nr).mean();
            ds.row(r) = (inv * (dnr - mean_dn - nr * mean_dn_n)).matrix().transpose();
        }
        grads.weights[static_cast<size_t>(l)].noalias() += x_prev.transpose() * ds;
        grads.biases[static_cast<size_t>(l)] += ds.colwise().sum().transpose();
        dcur = ds + ds * block.weights[static_cast<size_t>(l)].transpose();
    }
    if (block.has_projection()) {
        grads.input_proj.noalias() += cache.x_orig.transpose() * dcur;
        return dcur * block.input_proj.transpose();
    }
    return dcur;
}

struct ModelGrads {
    std::vector<std::vector<BlockGrads>> channel_proj;
    std::vector<BlockGrads> feature_embed;
    std::vector<BlockGrads> mixer;
    BlockGrads readout;
    Eigen::MatrixXd head_weight;
    Eigen::VectorXd head_bias;

    static ModelGrads zeros_like(const HopseModel& m) {
        ModelGrads g;
        g.channel_proj.resize(m.channel_proj.size());
        for (size_t r = 0; r < m.channel_proj.size(); ++r)
            for (const auto& blk : m.channel_proj[r])
                g.channel_proj[r].push_back(BlockGrads::zeros_like(blk));
        for (const auto& blk : m.feature_embed) g.feature_embed.push_back(BlockGrads::zeros_like(blk));
        for (const auto& blk : m.mixer) g.mixer.push_back(BlockGrads::zeros_like(blk));
        g.readout = BlockGrads::zeros_like(m.readout);
        g.head_weight = Eigen::MatrixXd::Zero(m.head_weight.rows(), m.head_weight.cols());
        g.head_bias = Eigen::VectorXd::Zero(m.head_bias.size());
        return g;
    }
};

// Canonical parameter order shared by flatten/set/init/serialization:
// f_{r,k} blocks rank-major, then per-rank embedders, mixers, the readout,
// and the task head. Within a block: projection, then (W, b) per layer.
template <class Model, class Fn>
void visit_matrices(Model& m, Fn&& fn) {
    auto visit_block = [&](auto& blk) {
        if (blk.input_proj.size()) fn(blk.input_proj);
        for (size_t l = 0; l < blk.weights.size(); ++l) {
            fn(blk.weights[l]);
            fn(blk.biases[l]);
        }
    };
    for (auto& row : m.channel_proj)
        for (auto& blk : row) visit_block(blk);
    for (auto& blk : m.feature_embed) visit_block(blk);
    for (auto& blk : m.mixer) visit_block(blk);
    visit_block(m.readout);
    fn(m.head_weight);
    fn(m.head_bias);
}

} // namespace

Target Target::of(double v) {
    Target t;
    t.value = Eigen::VectorXd::Constant(1, v);
    return t;
}

Eigen::MatrixXd mlp_forward(const MlpBlock& block, const Eigen::MatrixXd& x) {
    check_finite(x, "mlp input");
    return block_forward(block, x, nullptr);
}

ModelConfig ModelConfig::from_bundle(const RankFeatureBundle& b, int hidden, int depth,
                                     TaskKind task) {
    ModelConfig cfg;
    cfg.max_rank = b.max_rank;
    cfg.kinds = b.kinds;
    cfg.hidden = hidden;
    cfg.depth = depth;
    cfg.task = task;
    for (size_t r = 0; r < b.num_ranks(); ++r) {
        std::vector<int> widths;
        for (const auto& x : b.channels[r]) widths.push_back(static_cast<int>(x.cols()));
        cfg.x_widths.push_back(std::move(widths));
        cfg.z_widths.push_back(static_cast<int>(b.init_features[r].cols()));
    }
    return cfg;
}

bool ModelConfig::matches(const RankFeatureBundle& b) const {
    if (b.max_rank != max_rank || b.kinds != kinds) return false;
    for (size_t r = 0; r < b.num_ranks(); ++r) {
        if (static_cast<int>(b.init_features[r].cols()) != z_widths[r]) return false;
        for (size_t k = 0; k < b.channels[r].size(); ++k)
            if (static_cast<int>(b.channels[r][k].cols()) != x_widths[r][k]) return false;
    }
    return true;
}

size_t HopseModel::num_params() const {
    size_t n = 0;
    visit_matrices(const_cast<HopseModel&>(*this),
                   [&](const auto& m) { n += static_cast<size_t>(m.size()); });
    return n;
}

namespace {

MlpBlock make_block(int in_dim, int width, int depth, std::mt19937_64& rng) {
    MlpBlock blk;
    auto glorot = [&rng](Eigen::MatrixXd& m, int fan_in, int fan_out) {
        double lim = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-lim, lim);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    };
    if (in_dim != width) {
        blk.input_proj.resize(in_dim, width);
        glorot(blk.input_proj, in_dim, width);
    }
    // biases draw from U(+-1/sqrt(width)); an all-zero bias would park the
    // normalized pre-activations of constant inputs exactly on the
    // LeakyReLU kink
    std::uniform_real_distribution<double> bias_dist(-1.0 / std::sqrt(width),
                                                     1.0 / std::sqrt(width));
    for (int l = 0; l < depth; ++l) {
        Eigen::MatrixXd w(width, width);
        glorot(w, width, width);
        blk.weights.push_back(std::move(w));
        Eigen::VectorXd b(width);
        for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = bias_dist(rng);
        blk.biases.push_back(std::move(b));
    }
    return blk;
}

} // namespace

HopseModel make_model(const ModelConfig& config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    HopseModel m;
    m.config = config;
    const int D = config.hidden;
    const int L = config.depth;
    const auto ranks = config.x_widths.size();
    m.channel_proj.resize(ranks);
    for (size_t r = 0; r < ranks; ++r)
        for (int w : config.x_widths[r]) m.channel_proj[r].push_back(make_block(w, D, L, rng));
    for (size_t r = 0; r < ranks; ++r)
        m.feature_embed.push_back(make_block(config.z_widths[r], D, L, rng));
    const int mix_in = D * (1 + static_cast<int>(config.kinds.size()));
    for (size_t r = 0; r < ranks; ++r) m.mixer.push_back(make_block(mix_in, D, L, rng));
    m.readout = make_block(D * static_cast<int>(ranks), D, L, rng);
    m.head_weight.resize(D, config.task.output_dim);
    {
        double lim = std::sqrt(6.0 / (D + config.task.output_dim));
        std::uniform_real_distribution<double> dist(-lim, lim);
        for (Eigen::Index i = 0; i < m.head_weight.size(); ++i)
            m.head_weight.data()[i] = dist(rng);
    }
    m.head_bias = Eigen::VectorXd::Zero(config.task.output_dim);
    return m;
}

namespace {

struct ModelCache {
    std::vector<std::vector<BlockCache>> f;
    std::vector<BlockCache> eps;
    std::vector<BlockCache> mix;
    BlockCache readout;
    std::vector<Eigen::MatrixXd> concat_in; // per-rank mixer inputs
    Eigen::MatrixXd pooled;                 // 1 x (hidden * ranks)
    Eigen::MatrixXd readout_out;            // 1 x hidden
};

Eigen::VectorXd forward_impl(const HopseModel& m, const RankFeatureBundle& bundle,
                             ModelCache* cache, std::vector<Eigen::MatrixXd>* rank_repr) {
    if (!m.config.matches(bundle))
        throw ShapeError("bundle shapes do not match the model configuration");
    const int D = m.config.hidden;
    const auto ranks = m.config.x_widths.size();
    if (cache) {
        cache->f.resize(ranks);
        cache->eps.resize(ranks);
        cache->mix.resize(ranks);
        cache->concat_in.resize(ranks);
    }
    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(1, static_cast<Eigen::Index>(ranks) * D);
    for (size_t r = 0; r < ranks; ++r) {
        const auto n_r = bundle.init_features[r].rows();
        Eigen::MatrixXd cat(n_r, D * (1 + static_cast<Eigen::Index>(m.config.kinds.size())));
        Eigen::MatrixXd zhat = block_forward(m.feature_embed[r], bundle.init_features[r],
                                             cache ? &cache->eps[r] : nullptr);
        cat.block(0, 0, n_r, D) = zhat;
        if (cache) cache->f[r].resize(m.config.kinds.size());
        for (size_t k = 0; k < m.config.kinds.size(); ++k) {
            Eigen::MatrixXd xhat = block_forward(m.channel_proj[r][k], bundle.channels[r][k],
                                                 cache ? &cache->f[r][k] : nullptr);
            cat.block(0, static_cast<Eigen::Index>(k + 1) * D, n_r, D) = xhat;
        }
        Eigen::MatrixXd h = block_forward(m.mixer[r], cat, cache ? &cache->mix[r] : nullptr);
        if (rank_repr) rank_repr->push_back(h);
        if (n_r > 0)
            pooled.block(0, static_cast<Eigen::Index>(r) * D, 1, D) = h.colwise().mean();
        if (cache) cache->concat_in[r] = std::move(cat);
    }
    Eigen::MatrixXd g = block_forward(m.readout, pooled, cache ? &cache->readout : nullptr);
    Eigen::VectorXd out = (g * m.head_weight).row(0).transpose() + m.head_bias;
    if (cache) {
        cache->pooled = std::move(pooled);
        cache->readout_out = std::move(g);
    }
    return out;
}

} // namespace

ForwardResult forward(const HopseModel& model, const RankFeatureBundle& bundle) {
    ForwardResult res;
    res.output = forward_impl(model, bundle, nullptr, &res.rank_repr);
    return res;
}

double loss(const Eigen::VectorXd& output, const Target& target, const TaskKind& task) {
    if (task.type == TaskKind::Type::Regression) {
        if (output.size() != target.value.size())
            throw ShapeError("regression target dimension mismatch");
        return (output - target.value).squaredNorm() / static_cast<double>(output.size());
    }
    if (target.label < 0 || target.label >= output.size())
        throw ShapeError("class label out of range");
    double mx = output.maxCoeff();
    double lse = mx + std::log((output.array() - mx).exp().sum());
    return lse - output(target.label);
}

namespace {

Eigen::VectorXd loss_grad_wrt_output(const Eigen::VectorXd& output, const Target& target,
                                     const TaskKind& task) {
    if (task.type == TaskKind::Type::Regression)
        return 2.0 * (output - target.value) / static_cast<double>(output.size());
    double mx = output.maxCoeff();
    Eigen::VectorXd soft = (output.array() - mx).exp();
    soft /= soft.sum();
    soft(target.label) -= 1.0;
    return soft;
}

void accumulate_grads(const HopseModel& m, const RankFeatureBundle& bundle,
                      const Target& target, ModelGrads& grads, double& loss_out) {
    ModelCache cache;
    Eigen::VectorXd out = forward_impl(m, bundle, &cache, nullptr);
    loss_out = loss(out, target, m.config.task);
    Eigen::VectorXd dout = loss_grad_wrt_output(out, target, m.config.task);

    const int D = m.config.hidden;
    grads.head_weight.noalias() += cache.readout_out.transpose() * dout.transpose();
    grads.head_bias += dout;
    Eigen::MatrixXd dg = dout.transpose() * m.head_weight.transpose(); // 1 x hidden
    Eigen::MatrixXd dpool = block_backward(m.readout, cache.readout, dg, grads.readout);

    for (size_t r = 0; r < m.config.x_widths.size(); ++r) {
        const auto n_r = bundle.init_features[r].rows();
        if (n_r == 0) continue;
        Eigen::MatrixXd dpool_r = dpool.block(0, static_cast<Eigen::Index>(r) * D, 1, D);
        Eigen::MatrixXd dh = Eigen::MatrixXd::Ones(n_r, 1) * (dpool_r / static_cast<double>(n_r));
        Eigen::MatrixXd dcat = block_backward(m.mixer[r], cache.mix[r], dh, grads.mixer[r]);
        block_backward(m.feature_embed[r], cache.eps[r], dcat.block(0, 0, n_r, D),
                       grads.feature_embed[r]);
        for (size_t k = 0; k < m.config.kinds.size(); ++k) {
            block_backward(m.channel_proj[r][k], cache.f[r][k],
                           dcat.block(0, static_cast<Eigen::Index>(k + 1) * D, n_r, D),
                           grads.channel_proj[r][k]);
        }
    }
}

Eigen::VectorXd flatten_grads(const HopseModel& model, ModelGrads& grads) {
    Eigen::VectorXd flat(static_cast<Eigen::Index>(model.num_params()));
    Eigen::Index pos = 0;
    visit_matrices(grads, [&](const auto& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) flat(pos++) = m.data()[i];
    });
    return flat;
}

} // namespace

LossGrad loss_and_grad(const HopseModel& model, const RankFeatureBundle& bundle,
                       const Target& target) {
    ModelGrads grads = ModelGrads::zeros_like(model);
    LossGrad lg;
    accumulate_grads(model, bundle, target, grads, lg.loss);
    lg.grad = flatten_grads(model, grads);
    return lg;
}

Eigen::VectorXd flatten_params(const HopseModel& model) {
    Eigen::VectorXd flat(static_cast<Eigen::Index>(model.num_params()));
    Eigen::Index pos = 0;
    visit_matrices(const_cast<HopseModel&>(model), [&](const auto& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) flat(pos++) = m.data()[i];
    });
    return flat;
}

void set_params(HopseModel& model, const Eigen::VectorXd& theta) {
    if (theta.size() != static_cast<Eigen::Index>(model.num_params()))
        throw ShapeError("parameter vector size mismatch");
    Eigen::Index pos = 0;
    visit_matrices(model, [&](auto& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = theta(pos++);
    });
}

double grad_check(const HopseModel& model, const RankFeatureBundle& bundle,
                  const Target& target, double eps) {
    Eigen::VectorXd analytic = loss_and_grad(model, bundle, target).grad;
    Eigen::VectorXd theta = flatten_params(model);
    HopseModel probe = model;
    double worst = 0;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        Eigen::VectorXd t = theta;
        t(i) = theta(i) + eps;
        set_params(probe, t);
        double up = loss(forward_impl(probe, bundle, nullptr, nullptr), target,
                         model.config.task);
        t(i) = theta(i) - eps;
        set_params(probe, t);
        double down = loss(forward_impl(probe, bundle, nullptr, nullptr), target,
                           model.config.task);
        double numeric = (up - down) / (2 * eps);
        double denom = std::max({std::abs(analytic(i)), std::abs(numeric), 1e-8});
        worst = std::max(worst, std::abs(analytic(i) - numeric) / denom);
    }
    return worst;
}

TrainResult train(const std::vector<std::pair<RankFeatureBundle, Target>>& dataset,
                  const TaskKind& task, const TrainConfig& cfg) {
    if (dataset.empty()) throw ShapeError("empty training dataset");
    ModelConfig mc = ModelConfig::from_bundle(dataset[0].first, cfg.hidden, cfg.depth, task);
    TrainResult res;
    res.model = make_model(mc, cfg.seed);
    for (int step = 0; step < cfg.steps; ++step) {
        ModelGrads grads = ModelGrads::zeros_like(res.model);
        double total = 0;
        for (const auto& [bundle, target] : dataset) {
            double item_loss = 0;
            accumulate_grads(res.model, bundle, target, grads, item_loss);
            total += item_loss;
        }
        double mean_loss = total / static_cast<double>(dataset.size());
        if (!std::isfinite(mean_loss))
            throw Diverged("loss became non-finite at step " + std::to_string(step));
        res.loss_trace.push_back(mean_loss);
        Eigen::VectorXd theta = flatten_params(res.model);
        theta -= (cfg.learning_rate / static_cast<double>(dataset.size())) *
                 flatten_grads(res.model, grads);
        set_params(res.model, theta);
    }
    return res;
}

double accuracy(const HopseModel& model,
                const std::vector<std::pair<RankFeatureBundle, Target>>& dataset) {
    if (dataset.empty()) return 0;
    size_t hits = 0;
    for (const auto& [bundle, target] : dataset) {
        Eigen::VectorXd out = forward_impl(model, bundle, nullptr, nullptr);
        if (model.config.task.type == TaskKind::Type::Classification) {
            Eigen::Index best;
            out.maxCoeff(&best);
            hits += (static_cast<int>(best) == target.label);
        } else {
            hits += ((out - target.value).cwiseAbs().maxCoeff() < 0.5);
        }
    }
    return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

namespace {

constexpr char kCkptMagic[9] = "HOPSECK1";

} // namespace

void write_checkpoint(std::ostream& os, const HopseModel& model) {
    os.write(kCkptMagic, 8);
    detail::write_u32(os, 1);
    const auto& c = model.config;
    detail::write_i64(os, c.max_rank);
    detail::write_u64(os, c.kinds.size());
    for (const auto& k : c.kinds) {
        detail::write_u8(os, static_cast<std::uint8_t>(k.tag));
        detail::write_u8(os, k.directed ? 1 : 0);
        detail::write_i64(os, k.param);
    }
    detail::write_u64(os, c.x_widths.size());
    for (size_t r = 0; r < c.x_widths.size(); ++r) {
        detail::write_u64(os, c.x_widths[r].size());
        for (int w : c.x_widths[r]) detail::write_i64(os, w);
        detail::write_i64(os, c.z_widths[r]);
    }
    detail::write_i64(os, c.hidden);
    detail::write_i64(os, c.depth);
    detail::write_u8(os, c.task.type == TaskKind::Type::Regression ? 0 : 1);
    detail::write_i64(os, c.task.output_dim);
    Eigen::VectorXd theta = flatten_params(model);
    detail::write_u64(os, static_cast<std::uint64_t>(theta.size()));
    for (Eigen::Index i = 0; i < theta.size(); ++i) detail::write_f64(os, theta(i));
}

HopseModel read_checkpoint(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || std::string(magic, 8) != std::string(kCkptMagic, 8))
        throw ParseError("not a hopse checkpoint file");
    if (detail::read_u32(is) != 1) throw ParseError("unsupported checkpoint version");
    ModelConfig c;
    c.max_rank = static_cast<int>(detail::read_i64(is));
    auto num_kinds = detail::read_u64(is);
    for (std::uint64_t i = 0; i < num_kinds; ++i) {
        auto tag = static_cast<PseKind::Tag>(detail::read_u8(is));
        bool directed = detail::read_u8(is) != 0;
        auto param = static_cast<int>(detail::read_i64(is));
        c.kinds.push_back(PseKind{tag, param, directed});
    }
    auto ranks = detail::read_u64(is);
    for (std::uint64_t r = 0; r < ranks; ++r) {
        auto nk = detail::read_u64(is);
        std::vector<int> widths;
        for (std::uint64_t k = 0; k < nk; ++k)
            widths.push_back(static_cast<int>(detail::read_i64(is)));
        c.x_widths.push_back(std::move(widths));
        c.z_widths.push_back(static_cast<int>(detail::read_i64(is)));
    }
    c.hidden = static_cast<int>(detail::read_i64(is));
    c.depth = static_cast<int>(detail::read_i64(is));
    c.task.type = detail::read_u8(is) == 0 ? TaskKind::Type::Regression
                                           : TaskKind::Type::Classification;
    c.task.output_dim = static_cast<int>(detail::read_i64(is));

    HopseModel model = make_model(c, 0);
    auto count = detail::read_u64(is);
    if (count != model.num_params()) throw ParseError("checkpoint parameter count mismatch");
    Eigen::VectorXd theta(static_cast<Eigen::Index>(count));
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = detail::read_f64(is);
    set_params(model, theta);
    return model;
}

void save_checkpoint(const std::string& path, const HopseModel& model) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_checkpoint(f, model);
}

HopseModel load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    return read_checkpoint(f);
}

} // namespace hopse
