import sch_compiler


def validate(data):
    pattern, fields = sch_compiler.COMPILED['s0']
    return bool(pattern.match(fields[0])) and (data is None or len(data) >= 0)
