import lcl_locales


def get(locale, key):
    return lcl_locales.TABLE.get(locale, {}).get(key, '')
