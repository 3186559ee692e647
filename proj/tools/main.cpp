#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/settings.hpp"

int main(int argc, char** argv) {
    using clutterscan::cli::Settings;

    CLI::App app{"clutterscan: detection of smooth structures in oriented clutter"};
    std::string command;
    std::string config_path;
    std::map<std::string, std::string> flags;

    app.add_option("command", command, "render-stimulus | exponent-sweep | volume-scan | nets-demo | power")
        ->required()
        ->check(CLI::IsMember(clutterscan::cli::command_names()));
    app.add_option("--config", config_path, "flat key = value file; flags override it");
    for (const auto& key : Settings::known_keys()) app.add_option("--" + key, flags[key]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Settings settings(command);
        if (!config_path.empty()) settings.load_file(config_path);
        for (const auto& key : Settings::known_keys())
            if (app.count("--" + key) > 0) settings.set(key, flags[key]);
        clutterscan::cli::run_command(settings);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return clutterscan::cli::exit_code_for(e);
    }
    return 0;
}
