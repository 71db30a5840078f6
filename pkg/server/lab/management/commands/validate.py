from lab.commands import LabCommand


class Command(LabCommand):
    help = "Checks the configured game against the prisoner's dilemma conditions"
    needs_seed = False

    def run(self, config, options, emitter):
        report = config.validate()
        data = {'game': config.game_type.value, **report.as_dict()}
        if emitter is not None:
            emitter.json(data, 'validation.json')
        return data, report.passed

    def failure_message(self, report):
        failed = sorted({v['condition'] for v in report['violations']})
        return f'conditions violated: {", ".join(failed)}'
