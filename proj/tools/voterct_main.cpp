#include "voterct/cli.hpp"

int main(int argc, char** argv) { return voterct::run_cli(argc, argv); }
