import fgn_cachegen


def lookup(index):
    return fgn_cachegen.CHECKSUMS.get(index % len(fgn_cachegen.CHECKSUMS), -1)
