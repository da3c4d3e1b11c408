import eps_scanner


def lookup(name):
    return eps_scanner.INDEX.get(name, {}).get('target', '')
