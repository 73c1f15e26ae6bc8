#include "kquant/cli.hpp"

int main(int argc, char** argv) { return kquant::cli::dispatch(argc, argv); }
