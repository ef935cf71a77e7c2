#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bures/records_io.hpp"
#include "bures/samplers.hpp"

namespace bures::cli {

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kInvalidInput = 2,
    kIoFailure = 3,
};

enum class Command { sample, volume, compare, check_jacobian, check_euler, density };

struct RunConfig {
    Command command = Command::volume;
    std::size_t n_levels = 0;
    std::vector<double> spectrum;
    SampleMethod method = SampleMethod::coset;
    std::size_t count = 1000;
    std::uint64_t seed = 42;
    std::string output_path;
    std::optional<RecordFormat> format;

    // sample
    std::optional<std::size_t> zero_block;
    bool zero_layers = false;
    unsigned threads = 0;

    // compare
    std::string a_path;
    std::string b_path;
    std::string column = "rho_33";
    std::string pairs_path;

    // check-jacobian
    std::size_t ball_n = 2;
    std::size_t points = 100;
    double step = 1e-5;

    // check-euler
    std::size_t nodes = 64;
    bool half_phi6 = false;
};

/// Comma-separated probabilities. Renormalizes when |sum - 1| < 1e-9 and
/// rejects (InvalidInputError) otherwise.
Spectrum parse_spectrum(const std::string& text);

int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_volume(const RunConfig& cfg, std::ostream& out);
int cmd_compare(const RunConfig& cfg, std::ostream& out);
int cmd_check_jacobian(const RunConfig& cfg, std::ostream& out);
int cmd_check_euler(const RunConfig& cfg, std::ostream& out);
int cmd_density(const RunConfig& cfg, std::ostream& out);

/// Parses argv-style arguments (without the program name) and runs the command.
/// Library errors become exit codes with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bures::cli
