#include "nilcover/cli.hpp"

int main(int argc, char** argv) { return nilcover::run_cli(argc, argv); }
