#include "dodeca/cli.hpp"

int main(int argc, char** argv) { return dodeca::run_cli(argc, argv); }
