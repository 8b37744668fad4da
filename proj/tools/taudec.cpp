// taudec: decoherence-timescale reports for superposed charged systems
// (neuron firing states, microtubule polarization kinks, colloid grains),
// plus the finite-dimensional subject/object density-matrix demos and the
// grid-based verification suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deco/config.hpp"
#include "deco/oracle.hpp"
#include "deco/report.hpp"
#include "deco/trinity.hpp"

namespace {

int write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    f << content;
    return 0;
}

std::string matrix_text(const deco::DensityMatrix& rho) {
    std::ostringstream os;
    bool complex_entries = false;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            if (std::abs(rho.entries()(i, j).imag()) > 1e-12) complex_entries = true;
    char buf[64];
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            const auto z = rho.entries()(i, j);
            if (complex_entries)
                std::snprintf(buf, sizeof(buf), " %6.3f%+.3fi", z.real(), z.imag());
            else
                std::snprintf(buf, sizeof(buf), " %6.3f", z.real());
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

std::string demo_json(const std::string& name, int figure,
                      const std::vector<deco::DemoStage>& stages) {
    const auto part = deco::subject_object_partition();
    nlohmann::ordered_json doc;
    doc["tool"] = "taudec";
    doc["demo"] = name;
    doc["figure"] = figure;
    doc["basis"] = deco::subject_object_basis().names;
    nlohmann::ordered_json out_stages = nlohmann::ordered_json::array();
    for (const auto& stage : stages) {
        nlohmann::ordered_json s;
        s["label"] = stage.label;
        s["state"] = stage.state.to_json();
        s["subject_entropy_bits"] =
            deco::entropy_bits(deco::partial_trace(stage.state, part, {0}));
        s["object_entropy_bits"] =
            deco::entropy_bits(deco::partial_trace(stage.state, part, {1}));
        s["mutual_information_bits"] =
            deco::mutual_information_bits(stage.state, part, 0, 1);
        out_stages.push_back(std::move(s));
    }
    doc["stages"] = std::move(out_stages);
    return doc.dump(2) + "\n";
}

std::string demo_text(const std::string& name, const std::vector<deco::DemoStage>& stages) {
    const auto part = deco::subject_object_partition();
    std::ostringstream os;
    os << "Density-matrix sequence: " << name << "\n";
    os << "Basis order:";
    for (const auto& label : deco::subject_object_basis().names) os << " |" << label << ">";
    os << "\n\n";
    char buf[160];
    for (size_t i = 0; i < stages.size(); ++i) {
        os << "stage " << i << ": " << stages[i].label << "\n";
        os << matrix_text(stages[i].state);
        std::snprintf(buf, sizeof(buf),
                      "subject entropy %.4f bits, object entropy %.4f bits, "
                      "mutual information %.4f bits\n\n",
                      deco::entropy_bits(deco::partial_trace(stages[i].state, part, {0})),
                      deco::entropy_bits(deco::partial_trace(stages[i].state, part, {1})),
                      deco::mutual_information_bits(stages[i].state, part, 0, 1));
        os << buf;
    }
    return os.str();
}

std::string oracle_text(const nlohmann::json& rows) {
    std::ostringstream os;
    os << "Oracle suite\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%-42s analytic %.6e  measured %.6e  error %.3e\n",
                      row.at("test").get<std::string>().c_str(),
                      row.at("analytic_value").get<double>(),
                      row.at("measured_value").get<double>(),
                      row.at("relative_error").get<double>());
        os << buf;
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoherence timescale calculator and density-matrix toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "text";
    std::string theta_policy;
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--theta-policy", theta_policy,
                   "orientation handling for tidal rows (overrides the config)")
        ->check(CLI::IsMember({"drop", "worst", "best"}));

    std::string config_path;
    auto* cmd_run = app.add_subcommand("run", "evaluate a scenario configuration file");
    cmd_run->add_option("config", config_path, "JSON configuration file")->required();

    auto* cmd_table = app.add_subcommand(
        "table1", "the four default decoherence rows (neuron and microtubule)");

    int figure = 0;
    auto* cmd_demo = app.add_subcommand(
        "trinity-demo", "subject/object density-matrix evolution sequences");
    cmd_demo->add_option("--figure", figure,
                         "4 = object measurement sequence, 5 = subject snap decision")
        ->required();

    auto* cmd_oracle = app.add_subcommand(
        "oracle", "grid-based verification of the analytic suppression formulas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_run) {
            std::ifstream f(config_path);
            if (!f) throw deco::ConfigError("$", "cannot read file '" + config_path + "'");
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(f);
            } catch (const nlohmann::json::parse_error& e) {
                throw deco::ConfigError("$", std::string("invalid JSON: ") + e.what());
            }
            deco::ScenarioConfig config = deco::parse_config(doc);
            if (theta_policy == "drop") config.theta_policy = deco::ThetaPolicy::drop;
            if (theta_policy == "worst") config.theta_policy = deco::ThetaPolicy::worst;
            if (theta_policy == "best") config.theta_policy = deco::ThetaPolicy::best;
            const deco::Report report = deco::run_scenario(config);
            return write_output(
                format == "json" ? deco::render_json(report) : deco::render_text(report),
                out_path);
        }
        if (*cmd_table) {
            deco::ThetaPolicy policy = deco::ThetaPolicy::drop;
            if (theta_policy == "worst") policy = deco::ThetaPolicy::worst;
            if (theta_policy == "best") policy = deco::ThetaPolicy::best;
            const deco::Report report = deco::standard_table(policy);
            return write_output(
                format == "json" ? deco::render_json(report) : deco::render_text(report),
                out_path);
        }
        if (*cmd_demo) {
            std::vector<deco::DemoStage> stages;
            std::string name;
            if (figure == 4) {
                stages = deco::measurement_demo_stages();
                name = "object-measurement";
            } else if (figure == 5) {
                stages = deco::snap_decision_demo_stages();
                name = "subject-snap-decision";
            } else {
                std::cerr << "error: --figure must be 4 or 5\n";
                return 2;
            }
            return write_output(format == "json" ? demo_json(name, figure, stages)
                                                 : demo_text(name, stages),
                                out_path);
        }
        if (*cmd_oracle) {
            const nlohmann::json rows = deco::run_oracle_suite();
            return write_output(
                format == "json" ? rows.dump(2) + "\n" : oracle_text(rows), out_path);
        }
    } catch (const deco::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const deco::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
