#include "monotor/cli.hpp"

int main(int argc, char** argv) { return monotor::cli::main_entry(argc, argv); }
