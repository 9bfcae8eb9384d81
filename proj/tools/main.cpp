#include "cli_app.hpp"

int main(int argc, char** argv) { return patind::cli::run_cli(argc, argv); }
