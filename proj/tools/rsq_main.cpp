#include "rsq/cli.hpp"

int main(int argc, char** argv) { return rsq::run_cli(argc, argv); }
