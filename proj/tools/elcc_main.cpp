// Command line front end: build artifacts, encode/corrupt/correct codewords
// and run the experiment suites, all driven by a JSON config plus a seed.
//
// Exit codes: 0 success, 1 validation/config error, 2 property-suite failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "elcc/runner.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
};

elcc::RunConfig resolve(const CommonArgs& args) {
    elcc::RunConfig config = elcc::load_config(args.config_path);
    if (args.seed_set) config.seed = args.seed;
    if (args.threads > 0) config.threads = args.threads;
    return config;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config path")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "root seed override")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--threads", args.threads, "worker threads for trials");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expander-code local correction toolkit"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* build = app.add_subcommand("build", "construct inner code, graph and Tanner code artifacts");
    add_common(build, args);

    auto* encode = app.add_subcommand("encode", "write a codeword file");
    add_common(encode, args);
    std::string encode_mode = "zero";
    std::string message_path;
    std::string word_out = "word.cw";
    encode->add_option("--mode", encode_mode, "zero | random | message");
    encode->add_option("--message", message_path, "JSON message file for --mode message");
    encode->add_option("--word-out", word_out, "output codeword file")->required();

    auto* corrupt = app.add_subcommand("corrupt", "apply the configured noise model to a codeword file");
    add_common(corrupt, args);
    std::string word_in;
    corrupt->add_option("--word", word_in, "input codeword file")->required();
    std::string corrupt_out;
    corrupt->add_option("--word-out", corrupt_out, "output corrupted file")->required();

    auto* correct = app.add_subcommand("correct", "locally correct one position of a codeword file");
    add_common(correct, args);
    std::string correct_word;
    std::string truth_path;
    std::string record_out;
    std::uint32_t position = 0;
    correct->add_option("--word", correct_word, "input codeword file")->required();
    correct->add_option("--position", position, "edge position to correct")->required();
    correct->add_option("--truth", truth_path, "uncorrupted reference codeword file");
    correct->add_option("--record", record_out, "write the trial record JSON here");

    auto* experiment = app.add_subcommand("experiment", "run the configured experiment suites");
    add_common(experiment, args);

    auto* walkstats = app.add_subcommand("walkstats", "run the walk-tail suite only");
    add_common(walkstats, args);

    auto* spectrum = app.add_subcommand("spectrum-check", "edge-walk spectral consistency check");
    add_common(spectrum, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage problems are validation failures: exit 1 (0 for --help).
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) {
            elcc::cmd_build(resolve(args), args.out_dir);
            std::cout << "artifacts written to " << args.out_dir << "\n";
            return 0;
        }
        if (encode->parsed()) {
            elcc::cmd_encode(resolve(args), args.out_dir, encode_mode, message_path, word_out);
            std::cout << "codeword written to " << word_out << "\n";
            return 0;
        }
        if (corrupt->parsed()) {
            elcc::cmd_corrupt(resolve(args), args.out_dir, word_in, corrupt_out);
            std::cout << "corrupted word written to " << corrupt_out << "\n";
            return 0;
        }
        if (correct->parsed()) {
            const elcc::Json record =
                elcc::cmd_correct(resolve(args), args.out_dir, correct_word, position, truth_path, record_out);
            std::cout << record.dump(2) << "\n";
            return 0;
        }
        if (experiment->parsed()) return elcc::cmd_experiment(resolve(args), args.out_dir) ? 0 : 2;
        if (walkstats->parsed()) return elcc::cmd_walkstats(resolve(args), args.out_dir) ? 0 : 2;
        if (spectrum->parsed()) return elcc::cmd_spectrum_check(resolve(args), args.out_dir) ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
