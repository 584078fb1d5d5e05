#include "lewisper/cli.hpp"

int main(int argc, char** argv) { return lewisper::cli::run(argc, argv); }
