#include "tcs/commands.hpp"

int main(int argc, char** argv) { return tcs::run_cli(argc, argv); }
