#include "tensortail/serialize.hpp"

#include <fstream>

namespace tensortail {

namespace {

json require_field(const json& j, const char* key, const char* context) {
    if (!j.contains(key)) {
        throw Error(ErrorKind::Parse, std::string(context) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

Shape shape_from_json(const json& j, const char* context) {
    if (!j.is_array()) throw Error(ErrorKind::Parse, std::string(context) + ": shape must be an array");
    std::vector<std::int64_t> dims;
    for (const auto& d : j) dims.push_back(d.get<std::int64_t>());
    return Shape(std::move(dims));
}

}  // namespace

json tensor_to_json(const EinsteinTensor& t) {
    json re = json::array(), im = json::array();
    for (const auto& e : t.entries()) {
        re.push_back(e.real());
        im.push_back(e.imag());
    }
    return {{"row_shape", t.row_shape().dims()},
            {"col_shape", t.col_shape().dims()},
            {"entries_re", std::move(re)},
            {"entries_im", std::move(im)}};
}

EinsteinTensor tensor_from_json(const json& j) {
    const auto rs = shape_from_json(require_field(j, "row_shape", "tensor"), "tensor.row_shape");
    const auto cs = shape_from_json(require_field(j, "col_shape", "tensor"), "tensor.col_shape");
    const auto re = require_field(j, "entries_re", "tensor").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("entries_im")) im = j.at("entries_im").get<std::vector<double>>();
    if (im.size() != re.size()) {
        throw Error(ErrorKind::Parse, "tensor: entries_re and entries_im length mismatch");
    }
    std::vector<cplx> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = {re[i], im[i]};
    return {rs, cs, std::move(entries)};
}

json ensemble_spec_to_json(const EnsembleSpec& spec) {
    json out = {{"kind", ensemble_kind_to_string(spec.kind)},
                {"shape", spec.shape.dims()},
                {"T", spec.bound},
                {"seed", spec.seed}};
    if (!spec.basis.empty()) {
        json basis = json::array();
        for (const auto& b : spec.basis) basis.push_back(tensor_to_json(b));
        out["basis"] = std::move(basis);
    }
    return out;
}

EnsembleSpec ensemble_spec_from_json(const json& j) {
    EnsembleSpec spec;
    spec.kind = ensemble_kind_from_string(
        require_field(j, "kind", "ensemble").get<std::string>());
    spec.shape = shape_from_json(require_field(j, "shape", "ensemble"), "ensemble.shape");
    spec.bound = require_field(j, "T", "ensemble").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("basis")) {
        for (const auto& b : j.at("basis")) spec.basis.push_back(tensor_from_json(b));
    }
    return spec;
}

json block_tensor_to_json(const BlockTensor& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.n(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.n(); ++j) row.push_back(tensor_to_json(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"blocks", std::move(rows)}};
}

BlockTensor block_tensor_from_json(const json& j, std::size_t n, const Shape& shape,
                                   std::uint64_t seed) {
    if (j.contains("fixture")) {
        const auto path = j.at("fixture").get<std::string>();
        return block_tensor_from_json(read_json_file(path), n, shape, seed);
    }
    if (j.contains("blocks")) {
        std::vector<std::vector<EinsteinTensor>> grid;
        for (const auto& row : j.at("blocks")) {
            std::vector<EinsteinTensor> blocks;
            for (const auto& b : row) blocks.push_back(tensor_from_json(b));
            grid.push_back(std::move(blocks));
        }
        BlockTensor a(std::move(grid));
        if (a.n() != n) throw Error(ErrorKind::Parse, "A.blocks: grid size differs from n");
        a.validate();
        return a;
    }
    const auto generator = require_field(j, "generator", "A").get<std::string>();
    const double scale = j.contains("scale") ? j.at("scale").get<double>() : 1.0;
    BlockTensor a(n, shape);
    if (generator == "identity") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                a.at(i, k) = scale * EinsteinTensor::identity(shape);
    } else if (generator == "diagonal_identity") {
        for (std::size_t i = 0; i < n; ++i) a.at(i, i) = scale * EinsteinTensor::identity(shape);
    } else if (generator == "random_hermitian") {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                auto rng = make_stream(seed, 0xA0, (i * n + k) & 0xFF);
                a.at(i, k) = random_hermitian_tensor(shape, rng, scale);
            }
        }
    } else {
        throw Error(ErrorKind::Parse, "A.generator: unknown generator '" + generator + "'");
    }
    return a;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1) {
        throw Error(ErrorKind::Parse, "config: schema_version must be 1");
    }
    ExperimentConfig config;
    config.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    config.ensemble = ensemble_spec_from_json(require_field(j, "ensemble", "config"));
    if (!j.at("ensemble").contains("seed")) config.ensemble.seed = config.seed;
    config.n = require_field(j, "n", "config").get<std::size_t>();
    config.trials = j.contains("trials") ? j.at("trials").get<std::size_t>() : 100;
    config.theta_grid = require_field(j, "theta_grid", "config").get<std::vector<double>>();
    if (j.contains("C4")) config.C4 = j.at("C4").get<double>();
    if (j.contains("threads")) config.threads = j.at("threads").get<int>();
    if (j.contains("exhaustive")) config.exhaustive = j.at("exhaustive").get<bool>();
    config.a = block_tensor_from_json(require_field(j, "A", "config"), config.n,
                                      config.ensemble.shape, config.seed);
    return config;
}

HWParams hw_params_from_json(const json& j) {
    HWParams p;
    p.dim_product = require_field(j, "dim_product", "params").get<std::int64_t>();
    p.T_dg = require_field(j, "T_dg", "params").get<double>();
    p.sigma2_dg = require_field(j, "sigma2_dg", "params").get<double>();
    p.T_cp = require_field(j, "T_cp", "params").get<double>();
    p.sigma2_cp = require_field(j, "sigma2_cp", "params").get<double>();
    if (j.contains("C4")) p.C4 = j.at("C4").get<double>();
    return p;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, "malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open file for writing: " + path);
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed: " + path);
}

}  // namespace tensortail
