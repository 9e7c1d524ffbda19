#include "polarbd/cli.hpp"

int main(int argc, char** argv) { return polarbd::run_cli(argc, argv); }
