#include "cli_app.hpp"

int main(int argc, char** argv) { return sumbounds::cli::run(argc, argv); }
