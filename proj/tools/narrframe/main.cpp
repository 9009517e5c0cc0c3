#include <iostream>

#include <CLI11.hpp>

#include "context.hpp"
#include "narrframe/error.hpp"
#include "narrframe/llm/provider.hpp"
#include "narrframe/metrics/errors.hpp"

int main(int argc, char** argv) {
  namespace cli = narrframe::cli;
  CLI::App app{"Narrative frame analysis pipeline", "narrframe"};
  app.require_subcommand(1);
  app.fallthrough();
  cli::GlobalFlags flags;
  cli::add_global_flags(app, flags);
  int status = cli::kExitOk;
  cli::register_pipeline_commands(app, flags, status);
  cli::register_report_commands(app, flags, status);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  } catch (const narrframe::llm::ProviderError& e) {
    std::cerr << "narrframe: " << e.what() << "\n";
    return cli::kExitProvider;
  } catch (const narrframe::llm::CredentialsMissing& e) {
    std::cerr << "narrframe: " << e.what() << "\n";
    return cli::kExitProvider;
  } catch (const narrframe::llm::ReplayMiss& e) {
    std::cerr << "narrframe: " << e.what() << "\n";
    return cli::kExitProvider;
  } catch (const narrframe::ValidationError& e) {
    std::cerr << "narrframe: " << e.what() << "\n";
    return cli::kExitValidation;
  } catch (const narrframe::Error& e) {
    std::cerr << "narrframe: " << e.what() << "\n";
    return cli::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "narrframe: " << e.what() << "\n";
    return cli::kExitValidation;
  }
  return status;
}
