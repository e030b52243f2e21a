#include "commands.hpp"

#include "kpo/types.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace kpo::cli;
  CLI::App app{"k-Pareto optimality: po sorting, choice, metrics and evolutionary experiments", "kpo"};
  app.set_config("--config", "", "INI or TOML file with the same keys as the flags; flags win");
  app.require_subcommand(1);
  const auto commands = register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (const auto& c : commands)
      if (c.app->parsed()) c.run();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const kpo::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const kpo::DimensionError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
