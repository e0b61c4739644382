#include "geolog/cli_app.hpp"

int main(int argc, char** argv) { return geolog::run_cli(argc, argv); }
