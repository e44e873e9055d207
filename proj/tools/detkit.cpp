#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "detkit/report.hpp"

namespace {

int usage_fail(const std::string& msg) {
    std::cerr << "detkit: " << msg << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite determinacy bounds and certified isomorphism lifting "
                 "for flat families over Q[t]"};

    std::string command, file;
    std::uint32_t cap = 0, order = 0;
    std::string box_arg, out_path;
    bool json_flag = false;

    app.add_option("command", command, "one of: t1 t2 bound divisor-bound support lift verify oracle artin-system")
        ->required();
    app.add_option("file", file, "problem file ('-' for stdin); a JSON certificate for verify")
        ->required();
    auto* ocap = app.add_option("--cap", cap, "exponent search cap");
    auto* oorder = app.add_option("--order", order, "target truncation order");
    auto* obox = app.add_option("--box", box_arg, "truncation box as L,d");
    app.add_option("--out", out_path, "write the JSON envelope to this file");
    app.add_flag("--json", json_flag, "print the JSON envelope instead of the summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    const auto& names = detkit::command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        std::string all;
        for (const auto& n : names) all += (all.empty() ? "" : " ") + n;
        return usage_fail("unknown command '" + command + "' (expected one of: " + all + ")");
    }

    detkit::CliOptions opts;
    if (*ocap) opts.cap = cap;
    if (*oorder) opts.order = order;
    if (*obox) {
        std::size_t comma = box_arg.find(',');
        std::uint32_t L = 0, d = 0;
        try {
            if (comma == std::string::npos) throw std::invalid_argument("");
            L = static_cast<std::uint32_t>(std::stoul(box_arg.substr(0, comma)));
            d = static_cast<std::uint32_t>(std::stoul(box_arg.substr(comma + 1)));
        } catch (const std::exception&) {
            return usage_fail("--box expects two integers as L,d");
        }
        opts.box = {L, d};
    }

    std::string input;
    if (file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        input = ss.str();
    } else {
        std::ifstream in(file, std::ios::binary);
        if (!in) return usage_fail("cannot open '" + file + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        input = ss.str();
    }

    detkit::RunResult rr = detkit::run(command, input, opts);

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) return usage_fail("cannot write '" + out_path + "'");
        out << rr.json;
    }
    if (json_flag)
        std::cout << rr.json;
    else
        std::cout << rr.summary << "\n";
    return rr.exit_code;
}
