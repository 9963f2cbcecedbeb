#include "portree/cli.hpp"

int main(int argc, char** argv) { return portree::cli::dispatch(argc, argv); }
