#include "cli.hpp"

int main(int argc, char** argv) { return strongrate_cli::main_entry(argc, argv); }
