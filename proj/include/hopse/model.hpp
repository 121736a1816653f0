#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopse/aggregate.hpp"

namespace hopse {

/// MLP building block: optional bias-free input projection onto the hidden
/// width, then `depth` layers of
///   y = LeakyReLU(LayerNorm(x W + b + x; eps = 1e-6)).
/// Hidden layers are square so the skip connection is well typed.
struct MlpBlock {
    Eigen::MatrixXd input_proj;           // in_dim x width; 0x0 when in_dim == width
    std::vector<Eigen::MatrixXd> weights; // width x width
    std::vector<Eigen::VectorXd> biases;  // width

    static constexpr double kLnEpsilon = 1e-6;
    static constexpr double kLeakySlope = 0.01;

    int width() const { return weights.empty() ? 0 : static_cast<int>(weights[0].rows()); }
    // a projection is present whenever it has columns; it may have zero rows
    // (ranks with no targeting neighborhoods feed zero-width inputs)
    bool has_projection() const { return input_proj.cols() > 0; }
    int in_dim() const {
        return has_projection() ? static_cast<int>(input_proj.rows()) : width();
    }
    int depth() const { return static_cast<int>(weights.size()); }
};

Eigen::MatrixXd mlp_forward(const MlpBlock& block, const Eigen::MatrixXd& x);

struct TaskKind {
    enum class Type { Regression, Classification };
    Type type = Type::Regression;
    int output_dim = 1; // class count for classification

    static TaskKind regression(int dims = 1) { return {Type::Regression, dims}; }
    static TaskKind classification(int classes) { return {Type::Classification, classes}; }
    bool operator==(const TaskKind&) const = default;
};

/// Regression target: value vector; classification target: class index.
struct Target {
    Eigen::VectorXd value;
    int label = 0;

    static Target of(double v);
    static Target of_label(int cls) { return {{}, cls}; }
};

struct ModelConfig {
    int max_rank = 0;
    std::vector<PseKind> kinds;
    std::vector<std::vector<int>> x_widths; // [r][k] bundle X_{r,k} columns
    std::vector<int> z_widths;              // [r] bundle Z_r columns
    int hidden = 16;
    int depth = 1;
    TaskKind task;

    static ModelConfig from_bundle(const RankFeatureBundle& b, int hidden, int depth,
                                   TaskKind task);
    bool matches(const RankFeatureBundle& b) const;
};

/// Per-(rank, channel) projections, per-rank feature embedders and mixers,
/// one readout over the concatenated rank-pooled representations, and a
/// linear task head.
struct HopseModel {
    ModelConfig config;
    std::vector<std::vector<MlpBlock>> channel_proj; // f_{r,k}
    std::vector<MlpBlock> feature_embed;             // per-rank embedder
    std::vector<MlpBlock> mixer;                     // per-rank mixer
    MlpBlock readout;
    Eigen::MatrixXd head_weight; // hidden x output_dim
    Eigen::VectorXd head_bias;   // output_dim

    size_t num_params() const;
};

/// Seeded Glorot-uniform weights (biases zero).
HopseModel make_model(const ModelConfig& config, std::uint64_t seed);

struct ForwardResult {
    std::vector<Eigen::MatrixXd> rank_repr; // H_r per rank
    Eigen::VectorXd output;
};

/// Full pipeline: channel projections, feature embedding, per-rank mixing,
/// mean pooling per rank, readout, task head. Ranks with zero cells pool to
/// a zero vector.
ForwardResult forward(const HopseModel& model, const RankFeatureBundle& bundle);

double loss(const Eigen::VectorXd& output, const Target& target, const TaskKind& task);

/// Loss plus analytic parameter gradients (flat, in parameter order).
struct LossGrad {
    double loss = 0;
    Eigen::VectorXd grad;
};
LossGrad loss_and_grad(const HopseModel& model, const RankFeatureBundle& bundle,
                       const Target& target);

Eigen::VectorXd flatten_params(const HopseModel& model);
void set_params(HopseModel& model, const Eigen::VectorXd& theta);

/// Max over parameters of |g_analytic - g_numeric| / max(|g_a|, |g_n|, 1e-8)
/// with central finite differences of step eps.
double grad_check(const HopseModel& model, const RankFeatureBundle& bundle,
                  const Target& target, double eps = 1e-5);

struct TrainConfig {
    int steps = 200;
    double learning_rate = 1e-2;
    std::uint64_t seed = 7;
    int hidden = 16;
    int depth = 1;
};

struct TrainResult {
    HopseModel model;
    std::vector<double> loss_trace;
};

/// Deterministic full-batch gradient descent. Throws Diverged on a
/// non-finite loss.
TrainResult train(const std::vector<std::pair<RankFeatureBundle, Target>>& dataset,
                  const TaskKind& task, const TrainConfig& cfg);

double accuracy(const HopseModel& model,
                const std::vector<std::pair<RankFeatureBundle, Target>>& dataset);

/// Versioned checkpoint: config header + flat parameter array.
void write_checkpoint(std::ostream& os, const HopseModel& model);
HopseModel read_checkpoint(std::istream& is);
void save_checkpoint(const std::string& path, const HopseModel& model);
HopseModel load_checkpoint(const std::string& path);

} // namespace hopse
