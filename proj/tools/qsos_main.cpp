// Placeholder CLI entry point; subcommands are wired up in io/cli work.
int main() { return 0; }
