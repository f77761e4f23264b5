#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qphase/cli.hpp"

namespace qc = qphase::cli;

int main(int argc, char** argv)
{
    CLI::App app{"qphase: arithmetic phase, thermal-state and phase-locking toolkit"};
    app.require_subcommand(1);

    struct Slot {
        qc::Command command;
        CLI::App* sub;
        std::map<std::string, std::string> values;
        std::string output;
        std::string format = "csv";
    };
    std::vector<Slot> slots;
    slots.reserve(qc::all_commands().size());

    for (qc::Command c : qc::all_commands()) {
        auto& slot = slots.emplace_back(Slot{c, nullptr, {}, {}, "csv"});
        slot.sub = app.add_subcommand(std::string(qc::command_name(c)), std::string(qc::command_help(c)));
        if (c == qc::Command::operators_verify) {
            slot.sub->alias("operators-verify");
        }
        for (const auto& param : qc::parameters(c)) {
            auto help = param.help;
            if (!param.default_value.empty()) {
                help += " [default " + param.default_value + "]";
            }
            slot.sub->add_option("--" + param.key, slot.values[param.key], help);
        }
        slot.sub->add_option("-o,--output", slot.output,
                             std::string("output directory [default $") + qc::kOutputDirEnv + " or .]");
        slot.sub->add_option("--format", slot.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? qc::kExitOk : qc::kExitDomain;
    }

    for (auto& slot : slots) {
        if (!slot.sub->parsed()) {
            continue;
        }
        qc::RunConfig config{slot.command, {}, slot.output, slot.format == "json" ? qc::Format::json : qc::Format::csv};
        for (const auto& param : qc::parameters(slot.command)) {
            if (slot.sub->get_option("--" + param.key)->count() > 0) {
                config.params[param.key] = slot.values[param.key];
            }
        }
        return qc::run(config, std::cout, std::cerr);
    }
    return qc::kExitInternal;
}
