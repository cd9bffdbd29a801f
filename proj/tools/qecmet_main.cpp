#include "qecmet/cli.hpp"

int main(int argc, char** argv) { return qecmet::run_cli(argc, argv); }
