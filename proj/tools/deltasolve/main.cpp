#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "deltasolve/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace deltasolve;
    CLI::App app{"Point-interaction Schroedinger solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App* spectrum = app.add_subcommand("spectrum", "bound-state energies and null vectors");
    CLI::App* evolve = app.add_subcommand("evolve", "evaluate the time evolution on points");
    CLI::App* decay = app.add_subcommand("decay", "weighted sup-norm decay scan and power-law fit");
    for (CLI::App* s : {spectrum, evolve, decay}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        cli::RunConfig rc = cli::load_config(config_path);
        if (!format.empty()) rc.format = format == "json" ? cli::Format::json : cli::Format::csv;
        if (!out_path.empty()) rc.out = out_path;

        // Output is assembled in memory and written once.
        std::ostringstream buf;
        if (spectrum->parsed())
            cli::cmd_spectrum(rc, buf);
        else if (evolve->parsed())
            cli::cmd_evolve(rc, buf);
        else
            cli::cmd_decay(rc, buf);

        if (rc.out) {
            std::ofstream f(*rc.out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write " << *rc.out << '\n';
                return 1;
            }
            f << buf.str();
        } else {
            std::cout << buf.str();
        }
        return 0;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "numerical failure: " << e.what() << " (t=" << e.time() << ", M=" << e.cutoff()
                  << ", discrepancy=" << e.discrepancy() << ")\n";
        return kExitNumerical;
    } catch (const SingularGamma& e) {
        std::cerr << "numerical failure: " << e.what() << " (condition=" << e.condition() << ")\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
