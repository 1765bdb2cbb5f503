#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tensortail.h"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string theta_grid;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Path to the JSON config document")
        ->required();
    cmd->add_option("--out", opts.out_path, "Write the CSV report to this path");
    cmd->add_option("--seed", opts.seed, "Override the config seed");
    cmd->add_option("--threads", opts.threads, "Override the worker thread count");
    cmd->add_option("--theta-grid", opts.theta_grid,
                    "Override the theta grid, comma separated (e.g. 1.5,2,3)");
}

int run(const std::string& command, const CommonOptions& opts) {
    std::ifstream in(opts.config_path);
    if (!in) {
        std::cerr << "error: cannot open config file: " << opts.config_path << "\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string config = buf.str();

    std::string overrides = "{";
    bool first = true;
    auto append = [&](const std::string& piece) {
        if (!first) overrides += ",";
        overrides += piece;
        first = false;
    };
    if (opts.seed) append("\"seed\":" + std::to_string(*opts.seed));
    if (opts.threads) append("\"threads\":" + std::to_string(*opts.threads));
    if (!opts.theta_grid.empty()) {
        std::string grid = opts.theta_grid;
        for (auto& c : grid) {
            if (c == ',') c = ' ';
        }
        std::istringstream parse(grid);
        std::vector<double> values;
        double v;
        while (parse >> v) values.push_back(v);
        if (values.empty() || !parse.eof()) {
            std::cerr << "error: --theta-grid expects comma separated numbers\n";
            return 1;
        }
        std::string list = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            char num[40];
            std::snprintf(num, sizeof(num), "%.17g", values[i]);
            if (i) list += ",";
            list += num;
        }
        list += "]";
        append("\"theta_grid\":" + list);
    }
    overrides += "}";

    char* csv = nullptr;
    char* summary = nullptr;
    int all_satisfied = 0;
    const tt_status status = tt_run_command(command.c_str(), config.c_str(),
                                            overrides.c_str(), &csv, &summary,
                                            &all_satisfied);
    if (status != TT_OK) {
        std::cerr << "error: " << tt_last_error() << "\n";
        return 1;
    }

    if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file: " << opts.out_path << "\n";
            tt_string_free(csv);
            tt_string_free(summary);
            return 1;
        }
        out << csv;
        std::cout << summary << "\n";
    } else {
        std::cout << csv;
        std::cerr << summary << "\n";
    }
    tt_string_free(csv);
    tt_string_free(summary);
    return all_satisfied ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tail bound evaluation and Monte Carlo verification for sums and "
                 "quadratic forms of bounded random Hermitian tensors"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"bound-eval", "Evaluate the closed form tail bounds over a theta grid"},
        {"verify-bernstein", "Check the matrix Bernstein tail against sampled sums"},
        {"verify-symmetrization", "Check the symmetrization inequality empirically"},
        {"verify-decoupling", "Check decoupling of the coupling quadratic form"},
        {"verify-hw", "Check the composite quadratic form tail bound"},
        {"verify-algebra", "Randomized identities of the tensor product algebra"},
    };

    std::vector<CommonOptions> opts(commands.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto* sub = app.add_subcommand(commands[i].first, commands[i].second);
        add_common(sub, opts[i]);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) return run(commands[i].first, opts[i]);
    }
    return 1;
}
