// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/model_io.hpp"

#include <bit>
#include <filesystem>
#include <fstream>

#include "dpdkit/csv.hpp"

static_assert(std::endian::native == std::endian::little,
              "model archives are little-endian; byte swapping is not implemented");

namespace fs = std::filesystem;

namespace dpdkit::model {

namespace {

void write_f64(const std::string& path, const double* data, std::size_t count) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

std::vector<double> read_f64(const std::string& path, std::size_t count) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw InputError("cannot open file: " + path);
    auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != count * sizeof(double))
        throw InputError(path + ": expected " + std::to_string(count * sizeof(double)) +
                         " bytes, found " + std::to_string(bytes));
    std::vector<double> data(count);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw InputError(path + ": short read");
    return data;
}

std::size_t get_size(const std::map<std::string, std::string>& kv, const std::string& key,
                     const std::string& path) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(path + ": missing key '" + key + "'");
    long v = csv::parse_long(it->second, path + " " + key);
    if (v < 0) throw InputError(path + ": " + key + " must be nonnegative");
    return static_cast<std::size_t>(v);
}

double get_double(const std::map<std::string, std::string>& kv, const std::string& key,
                  const std::string& path) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(path + ": missing key '" + key + "'");
    return csv::parse_double(it->second, path + " " + key);
}

}  // namespace

void save_model(const std::string& dir, const ModelArchive& model) {
    fs::create_directories(dir);
    auto at = [&](const char* name) { return (fs::path(dir) / name).string(); };

    const auto d = static_cast<std::size_t>(model.projector.output_dim());
    const auto input_dim = static_cast<std::size_t>(model.projector.input_dim());

    csv::write_kv_file(at("manifest.txt"),
                       {{"format_version", "1"},
                        {"d", std::to_string(d)},
                        {"input_dim", std::to_string(input_dim)},
                        {"window_samples", std::to_string(model.window_samples)},
                        {"channel_order", "lw,rw,la,ra:x,y,z,svm"},
                        {"k", std::to_string(model.params.k)},
                        {"pi", csv::format_double(model.params.pi)},
                        {"lambda", csv::format_double(model.params.lambda)},
                        {"gamma", csv::format_double(model.params.gamma)},
                        {"min_evidence", std::to_string(model.params.min_evidence)},
                        {"bag_pos_n", std::to_string(model.bag_pos.size())},
                        {"bag_neg_n", std::to_string(model.bag_neg.size())},
                        {"seed", std::to_string(model.seed)}});

    write_f64(at("pca_mean"), model.projector.mean.data(), input_dim);
    write_f64(at("pca_components"), model.projector.components.data(), d * input_dim);
    write_f64(at("bag_pos"), model.bag_pos.points.data.data(), model.bag_pos.size() * d);
    write_f64(at("bag_neg"), model.bag_neg.points.data.data(), model.bag_neg.size() * d);
}

ModelArchive load_model(const std::string& dir) {
    auto at = [&](const char* name) { return (fs::path(dir) / name).string(); };
    std::string manifest = at("manifest.txt");
    auto kv = csv::read_kv_file(manifest);

    if (get_size(kv, "format_version", manifest) != 1)
        throw InputError(manifest + ": unsupported format_version");

    ModelArchive model;
    std::size_t d = get_size(kv, "d", manifest);
    std::size_t input_dim = get_size(kv, "input_dim", manifest);
    model.window_samples = get_size(kv, "window_samples", manifest);
    model.params.k = static_cast<int>(get_size(kv, "k", manifest));
    model.params.pi = get_double(kv, "pi", manifest);
    model.params.lambda = get_double(kv, "lambda", manifest);
    model.params.gamma = get_double(kv, "gamma", manifest);
    model.params.min_evidence = get_size(kv, "min_evidence", manifest);
    model.seed = get_size(kv, "seed", manifest);
    std::size_t n_pos = get_size(kv, "bag_pos_n", manifest);
    std::size_t n_neg = get_size(kv, "bag_neg_n", manifest);

    auto mean = read_f64(at("pca_mean"), input_dim);
    model.projector.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(input_dim));
    auto comps = read_f64(at("pca_components"), d * input_dim);
    model.projector.components =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            comps.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(input_dim));
    model.projector.explained_variance = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));

    model.bag_pos.polarity = rules::Polarity::Positive;
    model.bag_pos.points.n = n_pos;
    model.bag_pos.points.d = d;
    model.bag_pos.points.data = read_f64(at("bag_pos"), n_pos * d);
    model.bag_neg.polarity = rules::Polarity::Negative;
    model.bag_neg.points.n = n_neg;
    model.bag_neg.points.d = d;
    model.bag_neg.points.data = read_f64(at("bag_neg"), n_neg * d);
    return model;
}

}  // namespace dpdkit::model
